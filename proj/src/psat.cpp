#include "ccl/psat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ccl/errors.hpp"
#include "ccl/lp.hpp"
#include "ccl/worlds.hpp"

namespace ccl {

Formula completion_formula(const GroundProgram& program, const std::set<AtomId>& open_atoms) {
    const LevelMapping levels = check_acyclic(program);
    (void)levels;

    std::vector<std::vector<const GroundClause*>> rules(program.size());
    for (const GroundClause& c : program.clauses()) rules[c.head].push_back(&c);

    auto var = [&](AtomId a) { return Formula::variable(to_string(program.atom(a))); };
    std::vector<Formula> parts;
    for (AtomId a = 0; a < program.size(); ++a) {
        if (open_atoms.contains(a)) continue;
        std::vector<Formula> bodies;
        for (const GroundClause* rule : rules[a]) {
            std::vector<Formula> lits;
            for (AtomId b : rule->positive) lits.push_back(var(b));
            for (AtomId b : rule->negative) lits.push_back(Formula::negation(var(b)));
            bodies.push_back(Formula::conjunction(std::move(lits)));
        }
        const bool is_fact = std::any_of(rules[a].begin(), rules[a].end(), [](const GroundClause* r) {
            return r->positive.empty() && r->negative.empty();
        });
        if (is_fact)
            parts.push_back(var(a));
        else if (bodies.empty())
            parts.push_back(Formula::negation(var(a)));
        else
            parts.push_back(Formula::equivalence(var(a), Formula::disjunction(std::move(bodies))));
    }
    return Formula::conjunction(std::move(parts));
}

Formula choice_formula(const ChoiceSpace& space) {
    std::vector<Formula> blocks;
    for (const Alternative& alt : space.alternatives) {
        std::vector<Formula> atoms;
        for (const Atom& a : alt.atoms) atoms.push_back(Formula::variable(to_string(a)));
        blocks.push_back(Formula::exclusive(std::move(atoms)));
    }
    return Formula::conjunction(std::move(blocks));
}

std::vector<std::string> PsatInstance::variables() const {
    std::set<std::string> all;
    for (const Assessment& a : assessments) {
        auto v = a.formula.variables();
        all.insert(v.begin(), v.end());
    }
    return {all.begin(), all.end()};
}

PsatVerdict psat_decide(const PsatInstance& instance, const PsatOptions& options) {
    for (const Assessment& a : instance.assessments)
        if (a.probability < 0 || a.probability > 1)
            throw std::invalid_argument("assessment probability outside [0,1]");

    const std::vector<std::string> variables = instance.variables();
    std::vector<Formula> hard;
    std::vector<const Assessment*> soft;
    for (const Assessment& a : instance.assessments) {
        if (a.probability == 1)
            hard.push_back(a.formula);
        else
            soft.push_back(&a);
    }

    const auto models = enumerate_models(to_cnf(Formula::conjunction(std::move(hard))), variables, options.max_models);
    if (models.empty()) return PsatVerdict::unsat;

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < variables.size(); ++i) index.emplace(variables[i], i);

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    rows.emplace_back(models.size(), Rational(1));
    rhs.emplace_back(1);
    for (const Assessment* a : soft) {
        auto& row = rows.emplace_back(models.size(), Rational(0));
        for (std::size_t m = 0; m < models.size(); ++m) {
            const auto& model = models[m];
            if (a->formula.evaluate([&](const std::string& v) { return bool(model[index.at(v)]); })) row[m] = 1;
        }
        rhs.push_back(a->probability);
    }
    return SimplexTableau::feasible(rows, rhs) ? PsatVerdict::sat : PsatVerdict::unsat;
}

namespace {

struct SingleSpace {
    CompiledTheory compiled;
    Formula hard = Formula::constant(true);
    std::vector<AtomId> choices;
};

SingleSpace lower_single_space(const Theory& theory) {
    if (theory.spaces.size() != 1)
        throw PreconditionError("the PSAT reduction requires exactly one choice space, theory has " +
                                std::to_string(theory.spaces.size()));
    SingleSpace out{compile(theory), Formula::constant(true), {}};
    out.choices = out.compiled.atomic_choices(0);
    const std::set<AtomId> open(out.choices.begin(), out.choices.end());
    out.hard = Formula::conjunction({choice_formula(theory.spaces.front()), completion_formula(out.compiled.program, open)});
    return out;
}

Formula query_formula(const GroundProgram& program, const Query& query) {
    std::vector<Formula> lits;
    for (const Literal& l : query.literals) {
        if (!program.find(l.atom)) {
            if (l.positive) throw UnknownAtomError("query atom " + to_string(l.atom) + " is not in the Herbrand base");
            continue;
        }
        Formula v = Formula::variable(to_string(l.atom));
        lits.push_back(l.positive ? std::move(v) : Formula::negation(std::move(v)));
    }
    return Formula::conjunction(std::move(lits));
}

} // namespace

PsatInstance build_psat_instance(const Theory& theory, const Query& query, const Rational& alpha) {
    SingleSpace lowered = lower_single_space(theory);
    PsatInstance instance;
    instance.assessments.push_back({lowered.hard, Rational(1)});
    for (AtomId a : lowered.choices)
        instance.assessments.push_back(
            {Formula::variable(to_string(lowered.compiled.program.atom(a))), lowered.compiled.mu[a]});
    instance.assessments.push_back({query_formula(lowered.compiled.program, query), alpha});
    return instance;
}

Rational inner_point(const Theory& theory, const Query& query) {
    if (theory.spaces.size() != 1)
        throw PreconditionError("inner point requires exactly one choice space, theory has " +
                                std::to_string(theory.spaces.size()));
    const WorldSpace worlds = WorldSpace::build(theory);
    require_nonempty_credal_set(worlds);
    const MarginalPolytope polytope = marginal_polytope(worlds, 0);
    auto tableau = SimplexTableau::feasible(polytope.equalities, polytope.rhs);
    if (!tableau) throw std::logic_error("marginal agreement LP is infeasible");
    const auto point = tableau->solution();

    Rational value = 0;
    for (std::size_t w : worlds.satisfying_worlds(query)) value += point[worlds.worlds()[w].classes[0]];
    return value;
}

BisectionResult bisect_bounds(const Theory& theory, const Query& query, const Rational& epsilon,
                              const PsatOptions& options) {
    if (epsilon <= 0) throw std::invalid_argument("bisection tolerance must be positive");

    BisectionResult result;
    auto probe = [&](const Rational& alpha) {
        PsatVerdict v = psat_decide(build_psat_instance(theory, query, alpha), options);
        result.probes.push_back({alpha, v});
        return v == PsatVerdict::sat;
    };

    BracketState& b = result.bracket;
    b.epsilon = epsilon;
    const Rational inner = inner_point(theory, query);
    b.sat_low = inner;
    b.sat_high = inner;

    if (probe(Rational(0)))
        b.sat_low = 0;
    else
        b.unsat_low = Rational(0);
    if (probe(Rational(1)))
        b.sat_high = 1;
    else
        b.unsat_high = Rational(1);

    while (b.unsat_low && b.sat_low - *b.unsat_low >= epsilon) {
        Rational mid = (*b.unsat_low + b.sat_low) / 2;
        if (probe(mid))
            b.sat_low = mid;
        else
            b.unsat_low = mid;
    }
    while (b.unsat_high && *b.unsat_high - b.sat_high >= epsilon) {
        Rational mid = (b.sat_high + *b.unsat_high) / 2;
        if (probe(mid))
            b.sat_high = mid;
        else
            b.unsat_high = mid;
    }

    result.interval.lower = b.unsat_low ? *b.unsat_low : Rational(0);
    result.interval.upper = b.unsat_high ? *b.unsat_high : Rational(1);
    result.interval.method = Method::psat_bisect;
    result.interval.epsilon = epsilon;
    return result;
}

std::string export_instance(const PsatInstance& instance) {
    std::string out;
    for (const Assessment& a : instance.assessments)
        out += to_literal_string(a.probability) + " " + a.formula.to_string() + "\n";
    return out;
}

std::string export_dimacs(const Formula& formula) {
    const Cnf cnf = to_cnf(formula);
    const auto names = formula.variables();
    std::map<std::string, std::size_t> index;
    std::ostringstream out;
    for (const auto& n : names) {
        index.emplace(n, index.size() + 1);
        out << "c " << index.size() << " " << n << "\n";
    }
    out << "p cnf " << names.size() << " " << cnf.size() << "\n";
    for (const CnfClause& clause : cnf) {
        for (const CnfLiteral& l : clause) out << (l.positive ? "" : "-") << index.at(l.variable) << " ";
        out << "0\n";
    }
    return out.str();
}

} // namespace ccl
