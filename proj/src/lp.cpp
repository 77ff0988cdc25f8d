#include "ccl/lp.hpp"

#include <stdexcept>

namespace ccl {

void SimplexTableau::pivot(std::size_t row, std::size_t col) {
    const Rational p = a_[row][col];
    if (p == 0) throw std::invalid_argument("pivot on a zero entry");

    auto& pivot_row = a_[row];
    for (Rational& v : pivot_row) v /= p;
    rhs_[row] /= p;

    auto eliminate = [&](std::vector<Rational>& target, Rational& target_rhs) {
        const Rational f = target[col];
        if (f == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if (pivot_row[j] != 0) target[j] -= f * pivot_row[j];
        target_rhs -= f * rhs_[row];
    };
    for (std::size_t r = 0; r < rows(); ++r)
        if (r != row) eliminate(a_[r], rhs_[r]);
    if (!reduced_.empty()) {
        // objective_ tracks -z so that the same elimination applies.
        eliminate(reduced_, objective_);
    }
    basis_[row] = col;
}

std::vector<Rational> SimplexTableau::solution() const {
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t r = 0; r < rows(); ++r) x[basis_[r]] = rhs_[r];
    return x;
}

LpStatus SimplexTableau::minimize(const std::vector<Rational>& cost, Rational& value) {
    // Reduced costs c_j - c_B B^-1 A_j; objective_ = -c_B x_B.
    reduced_ = cost;
    reduced_.resize(cols_, Rational(0));
    objective_ = 0;
    for (std::size_t r = 0; r < rows(); ++r) {
        const Rational cb = reduced_[basis_[r]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j)
            if (a_[r][j] != 0) reduced_[j] -= cb * a_[r][j];
        objective_ -= cb * rhs_[r];
    }

    LpStatus status = LpStatus::optimal;
    while (true) {
        // Bland: lowest-index improving column, lowest-index leaving variable.
        std::size_t entering = cols_;
        for (std::size_t j = 0; j < cols_; ++j)
            if (reduced_[j] < 0) {
                entering = j;
                break;
            }
        if (entering == cols_) break;

        std::size_t leaving = rows();
        Rational best_ratio;
        for (std::size_t r = 0; r < rows(); ++r) {
            if (a_[r][entering] <= 0) continue;
            Rational ratio = rhs_[r] / a_[r][entering];
            if (leaving == rows() || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
                leaving = r;
                best_ratio = std::move(ratio);
            }
        }
        if (leaving == rows()) {
            status = LpStatus::unbounded;
            break;
        }
        pivot(leaving, entering);
    }
    value = -objective_;
    reduced_.clear();
    return status;
}

std::optional<SimplexTableau> SimplexTableau::feasible(const std::vector<std::vector<Rational>>& a,
                                                       const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("row count mismatch between A and b");
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a.front().size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("ragged constraint matrix");

    SimplexTableau t;
    t.cols_ = n + m; // structural columns, then one artificial per row
    t.a_.assign(m, std::vector<Rational>(n + m, Rational(0)));
    t.rhs_ = b;
    t.basis_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = b[r] < 0;
        for (std::size_t j = 0; j < n; ++j) t.a_[r][j] = flip ? Rational(-a[r][j]) : a[r][j];
        if (flip) t.rhs_[r] = -t.rhs_[r];
        t.a_[r][n + r] = 1;
        t.basis_[r] = n + r;
    }

    std::vector<Rational> phase1(n + m, Rational(0));
    for (std::size_t j = n; j < n + m; ++j) phase1[j] = 1;
    Rational infeasibility;
    t.minimize(phase1, infeasibility);
    if (infeasibility != 0) return std::nullopt;

    // Drive remaining (zero-valued) artificials out; rows where that is
    // impossible are linear combinations of others.
    for (std::size_t r = 0; r < t.rows();) {
        if (t.basis_[r] < n) {
            ++r;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.a_[r][j] != 0) {
                col = j;
                break;
            }
        if (col < n) {
            t.pivot(r, col);
            ++r;
        } else {
            t.a_.erase(t.a_.begin() + static_cast<std::ptrdiff_t>(r));
            t.rhs_.erase(t.rhs_.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis_.erase(t.basis_.begin() + static_cast<std::ptrdiff_t>(r));
        }
    }
    for (auto& row : t.a_) row.resize(n);
    t.cols_ = n;
    return t;
}

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_variables;
    if (lp.objective.size() != n) throw std::invalid_argument("objective size does not match variable count");

    std::size_t slacks = 0;
    for (const auto& c : lp.constraints) {
        if (c.coefficients.size() != n) throw std::invalid_argument("constraint size does not match variable count");
        if (c.relation != Relation::equal) ++slacks;
    }

    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::size_t slack = n;
    for (const auto& c : lp.constraints) {
        auto& row = a.emplace_back(c.coefficients);
        row.resize(n + slacks, Rational(0));
        if (c.relation == Relation::less_equal) row[slack++] = 1;
        if (c.relation == Relation::greater_equal) row[slack++] = -1;
        b.push_back(c.rhs);
    }

    LpResult result;
    auto tableau = SimplexTableau::feasible(a, b);
    if (!tableau) {
        result.status = LpStatus::infeasible;
        return result;
    }

    std::vector<Rational> cost(n + slacks, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.sense == Sense::maximize ? Rational(-lp.objective[j]) : lp.objective[j];

    Rational value;
    result.status = tableau->minimize(cost, value);
    if (result.status == LpStatus::unbounded) return result;
    result.value = lp.sense == Sense::maximize ? Rational(-value) : value;
    result.point = tableau->solution();
    result.point.resize(n);
    return result;
}

} // namespace ccl
