#include "ccl/worlds.hpp"

#include <algorithm>

#include "ccl/errors.hpp"

namespace ccl {

std::vector<AtomId> CompiledTheory::atomic_choices(std::size_t space) const {
    std::vector<AtomId> out;
    for (const auto& alt : spaces.at(space))
        for (AtomId a : alt)
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    return out;
}

CompiledTheory compile(const Theory& theory) {
    if (auto report = validate_theory(theory); !report.ok()) throw ValidationError(std::move(report));

    CompiledTheory out;
    out.program = ground(theory.program, theory.constants());
    for (const ChoiceSpace& space : theory.spaces) {
        auto& lowered = out.spaces.emplace_back();
        for (const Alternative& alt : space.alternatives) {
            auto& ids = lowered.emplace_back();
            for (const Atom& a : alt.atoms) ids.push_back(out.program.intern(a));
        }
    }
    out.mu.assign(out.program.size(), Rational(0));
    out.is_choice.assign(out.program.size(), false);
    for (const auto& space : out.spaces)
        for (const auto& alt : space)
            for (AtomId a : alt) {
                out.is_choice[a] = true;
                out.mu[a] = theory.mu.at(out.program.atom(a));
            }
    return out;
}

std::vector<PartialChoice> coherent_partial_choices(const CompiledTheory& theory, std::size_t space) {
    const auto& alternatives = theory.spaces.at(space);
    std::vector<PartialChoice> out;
    std::vector<AtomId> selection(alternatives.size());

    // An atom may be newly selected for alternative i only if no earlier
    // alternative contains it (that alternative already picked something
    // else). If an already selected atom lies in alternative i, it is forced.
    auto in_alt = [&](std::size_t i, AtomId a) {
        return std::find(alternatives[i].begin(), alternatives[i].end(), a) != alternatives[i].end();
    };
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == alternatives.size()) {
            PartialChoice pc{space, selection, selection};
            std::sort(pc.image.begin(), pc.image.end());
            pc.image.erase(std::unique(pc.image.begin(), pc.image.end()), pc.image.end());
            out.push_back(std::move(pc));
            return;
        }
        std::vector<AtomId> forced;
        for (std::size_t j = 0; j < i; ++j)
            if (in_alt(i, selection[j]) && std::find(forced.begin(), forced.end(), selection[j]) == forced.end())
                forced.push_back(selection[j]);
        if (forced.size() > 1) return;
        if (forced.size() == 1) {
            selection[i] = forced.front();
            self(self, i + 1);
            return;
        }
        for (AtomId a : alternatives[i]) {
            bool clash = false;
            for (std::size_t j = 0; j < i && !clash; ++j) clash = in_alt(j, a);
            if (clash) continue;
            selection[i] = a;
            self(self, i + 1);
        }
    };
    recurse(recurse, 0);
    return out;
}

std::vector<AtomId> TotalChoice::image() const {
    std::vector<AtomId> out;
    for (const PartialChoice& p : parts) out.insert(out.end(), p.image.begin(), p.image.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<std::vector<PartialChoice>> all_partials(const CompiledTheory& theory, std::size_t cap) {
    std::vector<std::vector<PartialChoice>> partials;
    std::size_t total = 1;
    for (std::size_t s = 0; s < theory.spaces.size(); ++s) {
        partials.push_back(coherent_partial_choices(theory, s));
        const std::size_t n = partials.back().size();
        if (n != 0 && total > cap / n)
            throw CapacityError("world space exceeds the cap of " + std::to_string(cap) + " worlds");
        total *= n;
    }
    if (total > cap) throw CapacityError("world space exceeds the cap of " + std::to_string(cap) + " worlds");
    return partials;
}

/// Calls visit(digits) for every element of the product, last space fastest.
template <typename Visit>
void for_each_combination(const std::vector<std::vector<PartialChoice>>& partials, Visit&& visit) {
    for (const auto& p : partials)
        if (p.empty()) return;
    std::vector<std::size_t> digits(partials.size(), 0);
    while (true) {
        visit(digits);
        std::size_t k = digits.size();
        while (k > 0) {
            if (++digits[k - 1] < partials[k - 1].size()) break;
            digits[k - 1] = 0;
            --k;
        }
        if (k == 0) return;
    }
}

} // namespace

std::vector<TotalChoice> enumerate_total_choices(const CompiledTheory& theory, std::size_t cap) {
    const auto partials = all_partials(theory, cap);
    std::vector<TotalChoice> out;
    for_each_combination(partials, [&](const std::vector<std::size_t>& digits) {
        TotalChoice tc;
        for (std::size_t s = 0; s < digits.size(); ++s) tc.parts.push_back(partials[s][digits[s]]);
        out.push_back(std::move(tc));
    });
    return out;
}

std::vector<TotalChoice> enumerate_total_choices(const Theory& theory, std::size_t cap) {
    return enumerate_total_choices(compile(theory), cap);
}

WorldSpace WorldSpace::build(const Theory& theory, std::size_t cap) {
    WorldSpace ws;
    ws.theory_ = compile(theory);
    const auto partials = all_partials(ws.theory_, cap);
    const ModelEvaluator evaluator(ws.theory_.program);

    for (std::size_t s = 0; s < partials.size(); ++s) {
        auto& classes = ws.classes_.emplace_back();
        for (const PartialChoice& p : partials[s]) classes.push_back(WorldClass{p, {}});
    }
    for_each_combination(partials, [&](const std::vector<std::size_t>& digits) {
        World w;
        w.classes = digits;
        for (std::size_t s = 0; s < digits.size(); ++s) {
            const auto& img = partials[s][digits[s]].image;
            w.image.insert(w.image.end(), img.begin(), img.end());
        }
        std::sort(w.image.begin(), w.image.end());
        w.model = evaluator.evaluate(w.image);
        const std::size_t index = ws.worlds_.size();
        for (std::size_t s = 0; s < digits.size(); ++s) ws.classes_[s][digits[s]].worlds.push_back(index);
        ws.worlds_.push_back(std::move(w));
    });
    return ws;
}

ResolvedQuery WorldSpace::resolve(const Query& query) const {
    ResolvedQuery out;
    for (const Literal& l : query.literals) {
        auto id = theory_.program.find(l.atom);
        if (!id) {
            if (l.positive)
                throw UnknownAtomError("query atom " + to_string(l.atom) + " is not in the Herbrand base");
            continue;
        }
        out.literals.emplace_back(*id, l.positive);
    }
    return out;
}

bool WorldSpace::satisfies(std::size_t world, const ResolvedQuery& query) const {
    const Interpretation& model = worlds_.at(world).model;
    return std::all_of(query.literals.begin(), query.literals.end(),
                       [&](const auto& lit) { return model.holds(lit.first) == lit.second; });
}

std::vector<std::size_t> WorldSpace::satisfying_worlds(const Query& query) const {
    const ResolvedQuery rq = resolve(query);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < worlds_.size(); ++w)
        if (satisfies(w, rq)) out.push_back(w);
    return out;
}

} // namespace ccl
