#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ccl/rational.hpp"

namespace ccl {

enum class Relation { less_equal, greater_equal, equal };
enum class Sense { minimize, maximize };

struct LinearConstraint {
    std::vector<Rational> coefficients; // one per variable
    Relation relation = Relation::equal;
    Rational rhs;
};

/// optimize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
    std::size_t num_variables = 0;
    std::vector<Rational> objective;
    Sense sense = Sense::minimize;
    std::vector<LinearConstraint> constraints;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;             // meaningful when optimal
    std::vector<Rational> point; // optimal basic feasible solution
};

/// Two-phase primal simplex in exact arithmetic with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

/// Dense simplex tableau for { A x = b, x >= 0 } kept in canonical form with
/// respect to a feasible basis. Redundant equality rows are removed when the
/// tableau is built, so rows() equals rank(A).
class SimplexTableau {
public:
    /// Phase 1 from an all-artificial basis. Returns nullopt when the system
    /// has no nonnegative solution.
    static std::optional<SimplexTableau> feasible(const std::vector<std::vector<Rational>>& a,
                                                  const std::vector<Rational>& b);

    std::size_t rows() const { return rhs_.size(); }
    std::size_t cols() const { return cols_; }
    const Rational& entry(std::size_t row, std::size_t col) const { return a_[row][col]; }
    const Rational& rhs(std::size_t row) const { return rhs_[row]; }
    const std::vector<std::size_t>& basis() const { return basis_; }

    /// Column `col` enters the basis in place of the variable basic in `row`.
    /// Requires entry(row, col) != 0.
    void pivot(std::size_t row, std::size_t col);

    /// Current basic solution, one value per column.
    std::vector<Rational> solution() const;

    /// Minimizes cost . x from the current basis with Bland's rule. On
    /// return the tableau holds an optimal basis unless the result is
    /// `unbounded`.
    LpStatus minimize(const std::vector<Rational>& cost, Rational& value);

private:
    SimplexTableau() = default;

    std::size_t cols_ = 0;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> reduced_; // reduced costs while minimizing
    Rational objective_;
};

} // namespace ccl
