#pragma once

// Random generators and brute-force oracles shared by the unit tests and
// the acceptance binary. Oracles deliberately avoid the engine's own
// algorithms (no simplex, no level ordering, no backtracking enumeration).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ccl/logic.hpp"
#include "ccl/rational.hpp"
#include "ccl/theory.hpp"
#include "ccl/io.hpp"

namespace support {

using ccl::Rational;
using Rng = std::mt19937_64;

inline std::string data_path(const std::string& name) { return std::string(CCL_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) { return ccl::io::read_file(data_path(name)); }

inline ccl::Theory load(const std::string& name) { return ccl::parse_theory(ccl::io::read_file(data_path(name))); }

inline Rational q(const char* text) { return ccl::parse_rational(text); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Random probability vector of length n with small denominators; zero
/// entries appear with probability `zero_rate`.
inline std::vector<Rational> random_masses(Rng& rng, std::size_t n, double zero_rate = 0.15) {
    std::vector<Rational> out(n);
    Rational total = 0;
    for (auto& w : out) {
        w = coin(rng, zero_rate) ? 0 : int(uniform(rng, 1, 9));
        total += w;
    }
    if (total == 0) {
        out[uniform(rng, 0, n - 1)] = 1;
        total = 1;
    }
    for (auto& w : out) w /= total;
    return out;
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

/// Random acyclic propositional program: atoms x0..x{n-1}; a clause for
/// x_i only uses atoms listed in `inputs` or x_j with j < i.
inline ccl::Program random_acyclic_program(Rng& rng, const std::vector<std::string>& heads,
                                           const std::vector<std::string>& inputs, std::size_t max_clauses,
                                           std::size_t max_body = 3) {
    ccl::Program program;
    const std::size_t clauses = uniform(rng, 0, max_clauses);
    for (std::size_t c = 0; c < clauses && !heads.empty(); ++c) {
        const std::size_t h = uniform(rng, 0, heads.size() - 1);
        std::vector<std::string> pool = inputs;
        pool.insert(pool.end(), heads.begin(), heads.begin() + std::ptrdiff_t(h));
        ccl::Clause clause{ccl::Atom(heads[h]), {}};
        const std::size_t body = pool.empty() ? 0 : uniform(rng, 0, std::min(max_body, pool.size()));
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t b = 0; b < body; ++b) clause.body.push_back({ccl::Atom(pool[b]), coin(rng, 0.65)});
        program.clauses.push_back(std::move(clause));
    }
    return program;
}

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

/// Least fixed point of the immediate-consequence operator started from
/// the empty interpretation, by plain iteration over the clause list. For
/// acyclic programs this is the unique stable model. Returns nullopt if no
/// fixed point is reached within |base| + 2 rounds.
inline std::optional<std::vector<bool>> naive_stable_model(const ccl::GroundProgram& program,
                                                           const std::vector<ccl::AtomId>& facts) {
    const std::size_t n = program.size();
    std::vector<bool> current(n, false);
    for (std::size_t round = 0; round < n + 2; ++round) {
        std::vector<bool> next(n, false);
        for (ccl::AtomId f : facts) next[f] = true;
        for (const auto& clause : program.clauses()) {
            bool body = true;
            for (auto a : clause.positive) body = body && current[a];
            for (auto a : clause.negative) body = body && !current[a];
            if (body) next[clause.head] = true;
        }
        if (next == current) return current;
        current = std::move(next);
    }
    return std::nullopt;
}

/// Supported-model check by exhaustive search: every interpretation where
/// an atom is true iff it is a fact or heads a rule with a true body.
inline std::vector<std::vector<bool>> supported_models(const ccl::GroundProgram& program,
                                                       const std::vector<ccl::AtomId>& facts) {
    const std::size_t n = program.size();
    std::vector<std::vector<bool>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
        std::vector<bool> derived(n, false);
        for (auto f : facts) derived[f] = true;
        for (const auto& clause : program.clauses()) {
            bool body = true;
            for (auto a : clause.positive) body = body && v[a];
            for (auto a : clause.negative) body = body && !v[a];
            if (body) derived[clause.head] = true;
        }
        if (derived == v) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theories
// ---------------------------------------------------------------------------

struct TheoryShape {
    std::size_t spaces = 1;
    std::size_t max_alternatives = 3; // per space
    std::size_t max_atoms = 3;        // per alternative
    std::size_t program_atoms = 4;
    std::size_t max_clauses = 6;
    bool disjoint = true; // alternatives of one space share no atoms
};

/// Random valid theory with choice atoms s<space>_<k>, program atoms
/// p0..pn and rules over both. With `disjoint == false` later alternatives
/// reuse atoms of earlier ones in the same space, with masses made
/// consistent by construction: shared atoms get the same probability.
inline ccl::Theory random_theory(Rng& rng, const TheoryShape& shape) {
    ccl::Theory theory;
    std::vector<std::string> choice_atoms;
    for (std::size_t s = 0; s < shape.spaces; ++s) {
        ccl::ChoiceSpace space;
        std::size_t next = 0;
        const std::size_t alternatives = uniform(rng, 1, shape.max_alternatives);
        std::vector<std::string> used;
        for (std::size_t a = 0; a < alternatives; ++a) {
            const std::size_t size = uniform(rng, 1, shape.max_atoms);
            ccl::Alternative alt;
            std::vector<std::string> atoms;
            // An overlapping alternative reuses one earlier atom and its mass.
            std::optional<std::string> shared;
            if (!shape.disjoint && !used.empty() && size >= 2 && coin(rng, 0.6))
                shared = used[uniform(rng, 0, used.size() - 1)];
            std::vector<Rational> masses;
            if (shared) {
                const Rational fixed = theory.mu.at(ccl::Atom(*shared));
                if (fixed == 1) shared.reset();
                else {
                    auto rest = random_masses(rng, size - 1, 0.0);
                    masses.push_back(fixed);
                    for (auto& m : rest) masses.push_back(m * (1 - fixed));
                    atoms.push_back(*shared);
                }
            }
            if (!shared) masses = random_masses(rng, size);
            while (atoms.size() < size) atoms.push_back("s" + std::to_string(s) + "_" + std::to_string(next++));
            for (std::size_t k = 0; k < size; ++k) {
                alt.atoms.emplace_back(atoms[k]);
                theory.mu[ccl::Atom(atoms[k])] = masses[k];
                if (std::find(used.begin(), used.end(), atoms[k]) == used.end()) {
                    used.push_back(atoms[k]);
                    choice_atoms.push_back(atoms[k]);
                }
            }
            space.alternatives.push_back(std::move(alt));
        }
        theory.spaces.push_back(std::move(space));
    }
    theory.program = random_acyclic_program(rng, names("p", shape.program_atoms), choice_atoms, shape.max_clauses);
    return theory;
}

/// Random conjunctive query over the theory's atoms (program heads and
/// atomic choices), at most `max_literals` long.
inline ccl::Query random_query(Rng& rng, const ccl::Theory& theory, std::size_t max_literals = 2) {
    std::set<std::string> pool;
    for (const auto& c : theory.program.clauses) pool.insert(c.head.relation);
    for (const auto& [atom, mu] : theory.mu) pool.insert(to_string(atom));
    std::vector<std::string> atoms(pool.begin(), pool.end());
    std::shuffle(atoms.begin(), atoms.end(), rng);
    ccl::Query query;
    const std::size_t n = uniform(rng, 1, std::min(max_literals, atoms.size()));
    for (std::size_t i = 0; i < n; ++i) query.literals.push_back({ccl::Atom(atoms[i]), coin(rng)});
    return query;
}

// ---------------------------------------------------------------------------
// Choice coherence
// ---------------------------------------------------------------------------

/// Images of all selection functions over the space's alternatives that
/// satisfy coherence, by filtering the full cartesian product.
inline std::set<std::set<std::string>> coherent_images_bruteforce(const ccl::ChoiceSpace& space) {
    std::set<std::set<std::string>> out;
    const auto& alts = space.alternatives;
    std::vector<std::size_t> pick(alts.size(), 0);
    for (;;) {
        bool coherent = true;
        for (std::size_t i = 0; i < alts.size() && coherent; ++i) {
            const ccl::Atom& chosen = alts[i].atoms[pick[i]];
            for (std::size_t j = 0; j < alts.size() && coherent; ++j) {
                const auto& other = alts[j].atoms;
                if (std::find(other.begin(), other.end(), chosen) != other.end() && !(other[pick[j]] == chosen))
                    coherent = false;
            }
        }
        if (coherent) {
            std::set<std::string> image;
            for (std::size_t i = 0; i < alts.size(); ++i) image.insert(to_string(alts[i].atoms[pick[i]]));
            out.insert(image);
        }
        std::size_t k = 0;
        while (k < alts.size() && ++pick[k] == alts[k].atoms.size()) pick[k++] = 0;
        if (k == alts.size()) return out;
    }
}

// ---------------------------------------------------------------------------
// Polytope vertices by basis subsets
// ---------------------------------------------------------------------------

/// Solves the square system M x = v by Gauss-Jordan elimination; nullopt if
/// singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> v) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(v[p], v[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            v[r] -= f * v[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) v[i] /= m[i][i];
    return v;
}

/// Row-reduces [A | b] and keeps a maximal independent set of rows.
inline void independent_rows(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col) of echelon basis
    for (std::size_t r = 0; r < a.size(); ++r) {
        std::vector<Rational> row = a[r];
        Rational value = b[r];
        for (const auto& [pr, pc] : pivots) {
            if (row[pc] == 0) continue;
            const Rational f = row[pc] / rows[pr][pc];
            for (std::size_t k = 0; k < row.size(); ++k) row[k] -= f * rows[pr][k];
            value -= f * rhs[pr];
        }
        auto nz = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
        if (nz == row.end()) continue;
        pivots.emplace_back(rows.size(), std::size_t(nz - row.begin()));
        rows.push_back(std::move(row));
        rhs.push_back(value);
    }
    a = std::move(rows);
    b = std::move(rhs);
}

/// Every vertex of { A x = b, x >= 0 } as the nonnegative solutions of
/// square subsystems on column subsets of size rank(A). Sorted, unique.
inline std::vector<std::vector<Rational>> vertices_by_basis_subsets(std::vector<std::vector<Rational>> a,
                                                                    std::vector<Rational> b) {
    independent_rows(a, b);
    const std::size_t m = a.size();
    const std::size_t n = a.empty() ? 0 : a.front().size();
    std::set<std::vector<Rational>> out;
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + std::ptrdiff_t(std::min(m, n)), true);
    do {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (chosen[j]) cols.push_back(j);
        std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t k = 0; k < m; ++k) sq[r][k] = a[r][cols[k]];
        auto x = solve_square(sq, b);
        if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v < 0; })) continue;
        std::vector<Rational> full(n, Rational(0));
        for (std::size_t k = 0; k < m; ++k) full[cols[k]] = (*x)[k];
        out.insert(full);
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Grid search over two-space theories
// ---------------------------------------------------------------------------

/// A choice space whose credal set has a closed-form parametrization:
/// either one alternative (a single joint) or two binary alternatives
/// {a, a'} x {b, b'} where t = P(a, b) ranges over an interval and fixes
/// the other three cells.
struct GridSpace {
    std::vector<std::vector<std::string>> alternatives;
};

struct GridCase {
    ccl::Theory theory;
    ccl::Query query;
    std::vector<GridSpace> spaces;
};

inline GridCase random_grid_case(Rng& rng) {
    GridCase out;
    std::vector<std::string> choice_atoms;
    for (std::size_t s = 0; s < 2; ++s) {
        GridSpace gs;
        ccl::ChoiceSpace space;
        const std::string prefix = "s" + std::to_string(s) + "_";
        const bool pair = coin(rng, 0.7);
        const std::size_t alts = pair ? 2 : 1;
        for (std::size_t a = 0; a < alts; ++a) {
            const std::size_t size = pair ? 2 : uniform(rng, 1, 3);
            const auto masses = random_masses(rng, size, 0.1);
            std::vector<std::string> atoms;
            ccl::Alternative alt;
            for (std::size_t k = 0; k < size; ++k) {
                atoms.push_back(prefix + std::to_string(a) + std::to_string(k));
                alt.atoms.emplace_back(atoms.back());
                out.theory.mu[ccl::Atom(atoms.back())] = masses[k];
                choice_atoms.push_back(atoms.back());
            }
            gs.alternatives.push_back(atoms);
            space.alternatives.push_back(std::move(alt));
        }
        out.spaces.push_back(std::move(gs));
        out.theory.spaces.push_back(std::move(space));
    }
    out.theory.program = random_acyclic_program(rng, names("p", 3), choice_atoms, 6);
    out.query = random_query(rng, out.theory, 2);
    return out;
}

/// Lower and upper query probability over a grid of step h in each space's
/// parameter (points lo, lo + h, ... <= hi). Truth per world comes from
/// naive_stable_model on the ground program.
inline std::pair<double, double> grid_bounds(const GridCase& c, double h) {
    struct Cell {
        std::vector<std::string> image;
        double base;  // mass at t = 0
        double slope; // d mass / d t
    };
    struct Param {
        std::vector<Cell> cells;
        std::vector<double> grid;
    };
    std::vector<Param> params;
    for (const GridSpace& gs : c.spaces) {
        Param p;
        auto mu = [&](const std::string& a) { return ccl::to_double(c.theory.mu.at(ccl::Atom(a))); };
        if (gs.alternatives.size() == 1) {
            for (const auto& a : gs.alternatives[0]) p.cells.push_back({{a}, mu(a), 0.0});
            p.grid = {0.0};
        } else {
            const auto& A = gs.alternatives[0];
            const auto& B = gs.alternatives[1];
            const double ma = mu(A[0]), mb = mu(B[0]);
            p.cells = {{{A[0], B[0]}, 0.0, 1.0},
                       {{A[0], B[1]}, ma, -1.0},
                       {{A[1], B[0]}, mb, -1.0},
                       {{A[1], B[1]}, 1.0 - ma - mb, 1.0}};
            const double lo = std::max(0.0, ma + mb - 1.0), hi = std::min(ma, mb);
            for (long k = 0;; ++k) {
                const double t = lo + double(k) * h;
                if (t > hi + 1e-12) break;
                p.grid.push_back(t);
            }
        }
        params.push_back(std::move(p));
    }

    ccl::GroundProgram gp = ccl::ground(c.theory.program, {});
    for (const auto& [atom, m] : c.theory.mu) gp.intern(atom);
    std::vector<std::pair<std::size_t, std::size_t>> satisfying;
    for (std::size_t i = 0; i < params[0].cells.size(); ++i)
        for (std::size_t j = 0; j < params[1].cells.size(); ++j) {
            std::vector<ccl::AtomId> facts;
            for (const auto& a : params[0].cells[i].image) facts.push_back(gp.intern(ccl::Atom(a)));
            for (const auto& a : params[1].cells[j].image) facts.push_back(gp.intern(ccl::Atom(a)));
            const auto model = naive_stable_model(gp, facts);
            bool holds = true;
            for (const auto& l : c.query.literals) {
                const auto id = gp.find(l.atom);
                const bool value = id && (*model)[*id];
                holds = holds && value == l.positive;
            }
            if (holds) satisfying.emplace_back(i, j);
        }

    double lo = 2.0, hi = -1.0;
    std::vector<double> m0(params[0].cells.size()), m1(params[1].cells.size());
    for (double t0 : params[0].grid) {
        for (std::size_t i = 0; i < m0.size(); ++i) m0[i] = params[0].cells[i].base + params[0].cells[i].slope * t0;
        for (double t1 : params[1].grid) {
            for (std::size_t j = 0; j < m1.size(); ++j)
                m1[j] = params[1].cells[j].base + params[1].cells[j].slope * t1;
            double value = 0;
            for (const auto& [i, j] : satisfying) value += m0[i] * m1[j];
            lo = std::min(lo, value);
            hi = std::max(hi, value);
        }
    }
    return {lo, hi};
}

} // namespace support
