#include "ccl/inference.hpp"

#include <algorithm>
#include <map>

#include "ccl/errors.hpp"

namespace ccl {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::lp: return "lp";
    case Method::vertex_product: return "vertex_product";
    case Method::outer_bound: return "outer_bound";
    case Method::psat_bisect: return "psat_bisect";
    }
    return "?";
}

namespace {

bool alternatives_disjoint(const std::vector<std::vector<AtomId>>& space) {
    std::vector<AtomId> seen;
    for (const auto& alt : space)
        for (AtomId a : alt) {
            if (std::find(seen.begin(), seen.end(), a) != seen.end()) return false;
            seen.push_back(a);
        }
    return true;
}

void require_single_space(const WorldSpace& worlds, const char* what) {
    if (worlds.num_spaces() != 1)
        throw PreconditionError(std::string(what) + " requires exactly one choice space, theory has " +
                                std::to_string(worlds.num_spaces()));
}

} // namespace

Rational independent_probability(const WorldSpace& worlds, const Query& query) {
    for (const auto& space : worlds.theory().spaces)
        if (!alternatives_disjoint(space))
            throw PreconditionError("independent product needs pairwise disjoint alternatives in every space");

    const auto& mu = worlds.theory().mu;
    Rational total = 0;
    for (std::size_t w : worlds.satisfying_worlds(query)) {
        Rational weight = 1;
        for (AtomId a : worlds.worlds()[w].image) weight *= mu[a];
        total += weight;
    }
    return total;
}

Rational icl_probability(const WorldSpace& worlds, const Query& query) {
    for (const auto& space : worlds.theory().spaces)
        if (space.size() != 1)
            throw PreconditionError("ICL probability requires every choice space to hold a single alternative");
    return independent_probability(worlds, query);
}

Rational icl_probability(const Theory& theory, const Query& query) {
    return icl_probability(WorldSpace::build(theory), query);
}

IntervalResult credal_bounds_single_space(const WorldSpace& worlds, const Query& query) {
    require_single_space(worlds, "single-space LP bounds");
    require_nonempty_credal_set(worlds);
    const MarginalPolytope polytope = marginal_polytope(worlds, 0);

    // With one space, classes and worlds coincide.
    std::vector<Rational> objective(polytope.num_classes, Rational(0));
    for (std::size_t w : worlds.satisfying_worlds(query)) objective[worlds.worlds()[w].classes[0]] = 1;

    const LpResult low = solve_lp(polytope.program(objective, Sense::minimize));
    const LpResult high = solve_lp(polytope.program(objective, Sense::maximize));
    if (low.status != LpStatus::optimal || high.status != LpStatus::optimal)
        throw std::logic_error("marginal polytope LP is not feasible and bounded");
    return {low.value, high.value, Method::lp, 0};
}

IntervalResult credal_bounds_single_space(const Theory& theory, const Query& query) {
    return credal_bounds_single_space(WorldSpace::build(theory), query);
}

IntervalResult credal_bounds_strong_extension(const WorldSpace& worlds, const Query& query,
                                              const StrongExtensionOptions& options) {
    require_nonempty_credal_set(worlds);
    std::vector<std::vector<std::vector<Rational>>> vertices;
    for (std::size_t s = 0; s < worlds.num_spaces(); ++s) {
        auto& dense = vertices.emplace_back();
        for (MassFunction& m : enumerate_vertices(marginal_polytope(worlds, s), options.vertices))
            dense.push_back(std::move(m.weights));
        if (dense.empty()) throw std::logic_error("empty marginal polytope for space " + std::to_string(s + 1));
    }
    if (kernels::combination_count(vertices) > options.max_combinations)
        throw CapacityError("vertex products exceed the cap of " + std::to_string(options.max_combinations));

    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t w : worlds.satisfying_worlds(query)) classes.push_back(worlds.worlds()[w].classes);

    const kernels::Extrema e = kernels::vertex_product_extrema(vertices, classes, options.execution);
    return {e.min, e.max, Method::vertex_product, 0};
}

IntervalResult credal_bounds_strong_extension(const Theory& theory, const Query& query,
                                              const StrongExtensionOptions& options) {
    return credal_bounds_strong_extension(WorldSpace::build(theory), query, options);
}

IntervalResult outer_bound(const WorldSpace& worlds, const Query& query) {
    require_nonempty_credal_set(worlds);
    const auto satisfying = worlds.satisfying_worlds(query);

    // Per-space class extrema, solved lazily for the classes actually used.
    std::vector<MarginalPolytope> polytopes;
    for (std::size_t s = 0; s < worlds.num_spaces(); ++s) polytopes.push_back(marginal_polytope(worlds, s));
    std::map<std::pair<std::size_t, std::size_t>, std::pair<Rational, Rational>> extrema;
    auto class_bounds = [&](std::size_t space, std::size_t cls) -> const std::pair<Rational, Rational>& {
        auto it = extrema.find({space, cls});
        if (it != extrema.end()) return it->second;
        std::vector<Rational> objective(polytopes[space].num_classes, Rational(0));
        objective[cls] = 1;
        const LpResult low = solve_lp(polytopes[space].program(objective, Sense::minimize));
        const LpResult high = solve_lp(polytopes[space].program(objective, Sense::maximize));
        if (low.status != LpStatus::optimal || high.status != LpStatus::optimal)
            throw std::logic_error("marginal polytope LP is not feasible and bounded");
        return extrema.emplace(std::make_pair(space, cls), std::make_pair(low.value, high.value)).first->second;
    };

    Rational lower = 0;
    Rational upper = 0;
    for (std::size_t w : satisfying) {
        Rational lo = 1;
        Rational hi = 1;
        const auto& cls = worlds.worlds()[w].classes;
        for (std::size_t s = 0; s < cls.size(); ++s) {
            const auto& [min, max] = class_bounds(s, cls[s]);
            lo *= min;
            hi *= max;
        }
        lower += lo;
        upper += hi;
    }
    if (upper > 1) upper = 1;
    return {lower, upper, Method::outer_bound, 0};
}

IntervalResult outer_bound(const Theory& theory, const Query& query) {
    return outer_bound(WorldSpace::build(theory), query);
}

} // namespace ccl
