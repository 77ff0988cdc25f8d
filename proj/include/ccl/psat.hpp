#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccl/formula.hpp"
#include "ccl/inference.hpp"
#include "ccl/logic.hpp"
#include "ccl/rational.hpp"
#include "ccl/theory.hpp"

namespace ccl {

/// Clark completion: every atom outside `open_atoms` is equivalent to the
/// disjunction of its rule bodies (false when it heads no rule). Atoms in
/// `open_atoms` (the atomic choices) stay unconstrained. Throws CycleError
/// for cyclic programs.
Formula completion_formula(const GroundProgram& program, const std::set<AtomId>& open_atoms);

/// Conjunction over alternatives of the exclusive choice among its atoms.
Formula choice_formula(const ChoiceSpace& space);

struct Assessment {
    Formula formula;
    Rational probability;
};

struct PsatInstance {
    std::vector<Assessment> assessments;

    /// Variables of all formulas, sorted.
    std::vector<std::string> variables() const;
};

enum class PsatVerdict { sat, unsat };

struct PsatOptions {
    std::size_t max_models = std::size_t{1} << 20;
};

/// Satisfiable iff some distribution over truth assignments gives each
/// formula its probability. Assessments at probability 1 restrict the
/// support; the rest become rows of an exact LP feasibility problem.
PsatVerdict psat_decide(const PsatInstance& instance, const PsatOptions& options = {});

/// { P(phi_C & phi_P) = 1 } u { P(a) = mu(a) } u { P(AND Q) = alpha } for a
/// single-space theory.
PsatInstance build_psat_instance(const Theory& theory, const Query& query, const Rational& alpha);

/// Query probability under a phase-1 feasible point of the marginal
/// agreement LP; always a SAT value of alpha. Single-space theories only.
Rational inner_point(const Theory& theory, const Query& query);

struct Probe {
    Rational alpha;
    PsatVerdict verdict;
};

/// Known SAT (inner) and UNSAT (outer) values around each endpoint. An
/// empty UNSAT side means the endpoint is exactly 0 (resp. 1).
struct BracketState {
    std::optional<Rational> unsat_low;
    Rational sat_low;
    Rational sat_high;
    std::optional<Rational> unsat_high;
    Rational epsilon;
};

struct BisectionResult {
    IntervalResult interval; // outer approximation, within epsilon per endpoint
    BracketState bracket;
    std::vector<Probe> probes; // every PSAT call, in order

    std::size_t psat_calls() const { return probes.size(); }
};

/// Bisection on alpha from the inner point and the 0/1 probes; stops when
/// both SAT/UNSAT gaps are below epsilon.
BisectionResult bisect_bounds(const Theory& theory, const Query& query, const Rational& epsilon,
                              const PsatOptions& options = {});

/// One line per assessment: "<probability> <formula>".
std::string export_instance(const PsatInstance& instance);

/// DIMACS CNF for one formula, with "c <index> <atom>" lines naming variables.
std::string export_dimacs(const Formula& formula);

} // namespace ccl
