#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ccl/kernels.hpp"
#include "ccl/lp.hpp"
#include "ccl/rational.hpp"
#include "ccl/theory.hpp"
#include "ccl/worlds.hpp"

namespace ccl {

enum class Method { lp, vertex_product, outer_bound, psat_bisect };

std::string_view to_string(Method method);

/// [lower, upper] success probability of a query. `epsilon` is 0 for the
/// exact methods and the bracketing tolerance for psat_bisect.
struct IntervalResult {
    Rational lower;
    Rational upper;
    Method method = Method::lp;
    Rational epsilon = 0;

    bool contains(const Rational& p) const { return lower <= p && p <= upper; }
};

/// Mass over the classes of one space (or over worlds when k = 1).
struct MassFunction {
    std::vector<Rational> weights;

    Rational total() const;
    friend bool operator==(const MassFunction&, const MassFunction&) = default;
};

/// M_i: nonnegative mass over the classes of space i with total 1 and
/// sum_{classes whose image contains a} mass = mu(a) for every atomic
/// choice a of the space.
struct MarginalPolytope {
    std::size_t space_index = 0;
    std::size_t num_classes = 0;
    std::vector<AtomId> choices;                 // one agreement row per choice
    std::vector<std::vector<Rational>> equalities; // normalization row first
    std::vector<Rational> rhs;

    bool contains(const MassFunction& m) const;
    /// LP over the polytope with the given objective on the class masses.
    LinearProgram program(std::vector<Rational> objective, Sense sense) const;
};

MarginalPolytope marginal_polytope(const WorldSpace& worlds, std::size_t space);

/// Throws EmptyCredalSetError naming the first space whose marginal
/// polytope is empty.
void require_nonempty_credal_set(const WorldSpace& worlds);

struct VertexOptions {
    std::size_t max_bases = 1'000'000;
};

/// Extreme points by a depth-first walk over the lexicographically feasible
/// bases (adjacent bases differ by one simplex pivot). Classes that are zero
/// on the whole polytope are dropped first. Vertices come back deduplicated
/// and sorted lexicographically. Throws CapacityError when more than
/// `max_bases` bases are visited.
std::vector<MassFunction> enumerate_vertices(const MarginalPolytope& polytope, const VertexOptions& options = {});

/// Query probability under the independent product of all alternatives,
/// i.e. sum over satisfying worlds of prod_{a in image} mu(a). Requires the
/// alternatives of every space to be pairwise disjoint.
Rational independent_probability(const WorldSpace& worlds, const Query& query);

/// ICL success probability. Requires every space to be a singleton.
Rational icl_probability(const WorldSpace& worlds, const Query& query);
Rational icl_probability(const Theory& theory, const Query& query);

/// Exact bounds by two LP solves over M_1. Requires exactly one space.
IntervalResult credal_bounds_single_space(const WorldSpace& worlds, const Query& query);
IntervalResult credal_bounds_single_space(const Theory& theory, const Query& query);

struct StrongExtensionOptions {
    VertexOptions vertices;
    std::size_t max_combinations = std::size_t{1} << 22;
    Execution execution = Execution::parallel;
};

/// Exact bounds over the strong extension: the multilinear objective is
/// evaluated at every product of per-space extreme points.
IntervalResult credal_bounds_strong_extension(const WorldSpace& worlds, const Query& query,
                                              const StrongExtensionOptions& options = {});
IntervalResult credal_bounds_strong_extension(const Theory& theory, const Query& query,
                                              const StrongExtensionOptions& options = {});

/// Factorized outer approximation: per-world products of per-space class
/// minima (maxima), summed over satisfying worlds; the upper sum is
/// clipped at 1. Always contains the exact interval.
IntervalResult outer_bound(const WorldSpace& worlds, const Query& query);
IntervalResult outer_bound(const Theory& theory, const Query& query);

} // namespace ccl
