#include <algorithm>
#include <set>
#include <stdexcept>

#include "ccl/errors.hpp"
#include "ccl/inference.hpp"

namespace ccl {

Rational MassFunction::total() const {
    Rational sum = 0;
    for (const Rational& w : weights) sum += w;
    return sum;
}

bool MarginalPolytope::contains(const MassFunction& m) const {
    if (m.weights.size() != num_classes) return false;
    if (std::any_of(m.weights.begin(), m.weights.end(), [](const Rational& w) { return w < 0; })) return false;
    for (std::size_t r = 0; r < equalities.size(); ++r) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < num_classes; ++j) lhs += equalities[r][j] * m.weights[j];
        if (lhs != rhs[r]) return false;
    }
    return true;
}

LinearProgram MarginalPolytope::program(std::vector<Rational> objective, Sense sense) const {
    LinearProgram lp;
    lp.num_variables = num_classes;
    lp.objective = std::move(objective);
    lp.sense = sense;
    for (std::size_t r = 0; r < equalities.size(); ++r)
        lp.constraints.push_back({equalities[r], Relation::equal, rhs[r]});
    return lp;
}

MarginalPolytope marginal_polytope(const WorldSpace& worlds, std::size_t space) {
    const auto& classes = worlds.classes_by_space().at(space);
    MarginalPolytope p;
    p.space_index = space;
    p.num_classes = classes.size();
    p.choices = worlds.theory().atomic_choices(space);

    p.equalities.emplace_back(p.num_classes, Rational(1));
    p.rhs.emplace_back(1);
    for (AtomId a : p.choices) {
        auto& row = p.equalities.emplace_back(p.num_classes, Rational(0));
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const auto& image = classes[c].partial.image;
            if (std::binary_search(image.begin(), image.end(), a)) row[c] = 1;
        }
        p.rhs.push_back(worlds.theory().mu[a]);
    }
    return p;
}

void require_nonempty_credal_set(const WorldSpace& worlds) {
    for (std::size_t s = 0; s < worlds.num_spaces(); ++s) {
        const MarginalPolytope p = marginal_polytope(worlds, s);
        if (!SimplexTableau::feasible(p.equalities, p.rhs))
            throw EmptyCredalSetError("choice space " + std::to_string(s + 1) +
                                      " admits no mass function agreeing with the choice probabilities");
    }
}

namespace {

// Columns that are positive at some point of { A x = b, x >= 0 }, found by
// maximizing each not-yet-seen column from the current basis.
std::vector<bool> support_columns(SimplexTableau& t, std::size_t n) {
    std::vector<bool> positive(n, false);
    auto mark = [&] {
        const auto x = t.solution();
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] > 0) positive[j] = true;
    };
    mark();
    for (std::size_t j = 0; j < n; ++j) {
        if (positive[j]) continue;
        std::vector<Rational> cost(n, Rational(0));
        cost[j] = -1;
        Rational value;
        t.minimize(cost, value);
        mark();
    }
    return positive;
}

// Canonical tableau for A x = b + (e, e^2, ..., e^m) with e -> 0+. The
// trailing identity block holds B^-1; its rows break ratio-test ties, so
// the perturbed polytope is simple and every feasible basis of it is a
// vertex with exactly one neighbour per nonbasic column.
class LexTableau {
public:
    explicit LexTableau(const SimplexTableau& t) : n_(t.cols()), m_(t.rows()), rhs_(m_), basis_(t.basis()) {
        a_.assign(m_, std::vector<Rational>(n_ + m_, Rational(0)));
        for (std::size_t r = 0; r < m_; ++r) {
            for (std::size_t j = 0; j < n_; ++j) a_[r][j] = t.entry(r, j);
            a_[r][n_ + r] = 1;
            rhs_[r] = t.rhs(r);
        }
    }

    std::size_t structural() const { return n_; }
    const std::vector<std::size_t>& basis() const { return basis_; }

    // Leaving row for entering column `col` by the lexicographic ratio
    // test; m_ if the column has no positive entry.
    std::size_t leaving_row(std::size_t col) const {
        std::size_t best = m_;
        for (std::size_t r = 0; r < m_; ++r) {
            if (a_[r][col] <= 0) continue;
            if (best == m_ || lex_less(r, best, col)) best = r;
        }
        return best;
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = a_[row][col];
        auto& pr = a_[row];
        for (Rational& v : pr) v /= p;
        rhs_[row] /= p;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == row || a_[r][col] == 0) continue;
            const Rational f = a_[r][col];
            for (std::size_t j = 0; j < pr.size(); ++j)
                if (pr[j] != 0) a_[r][j] -= f * pr[j];
            rhs_[r] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(n_, Rational(0));
        for (std::size_t r = 0; r < m_; ++r) x[basis_[r]] = rhs_[r];
        return x;
    }

private:
    // (rhs_r, inv_r) / a_r,col  <lex  (rhs_s, inv_s) / a_s,col
    bool lex_less(std::size_t r, std::size_t s, std::size_t col) const {
        const Rational& ar = a_[r][col];
        const Rational& as = a_[s][col];
        const Rational lhs = rhs_[r] * as, rhs = rhs_[s] * ar;
        if (lhs != rhs) return lhs < rhs;
        for (std::size_t k = n_; k < n_ + m_; ++k) {
            const Rational x = a_[r][k] * as, y = a_[s][k] * ar;
            if (x != y) return x < y;
        }
        return false;
    }

    std::size_t n_;
    std::size_t m_;
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
};

} // namespace

std::vector<MassFunction> enumerate_vertices(const MarginalPolytope& polytope, const VertexOptions& options) {
    const std::size_t n = polytope.num_classes;
    auto initial = SimplexTableau::feasible(polytope.equalities, polytope.rhs);
    if (!initial) return {};

    // Columns that vanish on the whole polytope only add degeneracy.
    const std::vector<bool> positive = support_columns(*initial, n);
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < n; ++j)
        if (positive[j]) kept.push_back(j);
    std::vector<std::vector<Rational>> a;
    for (const auto& row : polytope.equalities) {
        auto& reduced = a.emplace_back();
        for (std::size_t j : kept) reduced.push_back(row[j]);
    }
    auto canonical = SimplexTableau::feasible(a, polytope.rhs);
    if (!canonical) throw std::logic_error("support restriction lost feasibility");
    LexTableau t(*canonical);

    auto key = [&] {
        std::vector<std::size_t> b = t.basis();
        std::sort(b.begin(), b.end());
        return b;
    };
    auto lift = [&] {
        std::vector<Rational> x(n, Rational(0));
        const auto y = t.solution();
        for (std::size_t k = 0; k < kept.size(); ++k) x[kept[k]] = y[k];
        return x;
    };

    std::set<std::vector<std::size_t>> visited{key()};
    std::set<std::vector<Rational>> vertices{lift()};

    struct Frame {
        std::size_t next = 0; // next entering candidate
        std::size_t undo_row = 0;
        std::size_t undo_col = 0;
        bool has_undo = false;
    };
    std::vector<Frame> stack{Frame{}};

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == t.structural()) {
            if (top.has_undo) t.pivot(top.undo_row, top.undo_col);
            stack.pop_back();
            continue;
        }
        const std::size_t col = top.next++;
        if (std::find(t.basis().begin(), t.basis().end(), col) != t.basis().end()) continue;
        const std::size_t row = t.leaving_row(col);
        if (row == t.basis().size()) continue;
        const std::size_t leaving = t.basis()[row];
        t.pivot(row, col);
        if (!visited.insert(key()).second) {
            t.pivot(row, leaving);
            continue;
        }
        if (visited.size() > options.max_bases)
            throw CapacityError("vertex enumeration visited more than " + std::to_string(options.max_bases) +
                                " feasible bases");
        vertices.insert(lift());
        stack.push_back({0, row, leaving, true});
    }

    std::vector<MassFunction> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices) out.push_back(MassFunction{v});
    return out;
}

} // namespace ccl
