#pragma once

// Data-parallel inner loops. Each kernel has a serial reference
// implementation; the OpenMP version must agree with it exactly.

#include <cstddef>
#include <vector>

#include "ccl/rational.hpp"

namespace ccl {

enum class Execution { serial, parallel };

namespace kernels {

struct Extrema {
    Rational min;
    Rational max;
};

/// Minimum and maximum over all vertex combinations (one vertex per space)
/// of  sum_{w in satisfying} prod_i vertices[i][v_i][classes[w][i]].
///
/// `vertices[i]` lists the extreme points of space i's marginal polytope as
/// dense vectors over that space's world classes; `classes[w]` gives the
/// class index per space of the w-th satisfying world. With no satisfying
/// worlds both extrema are 0.
Extrema vertex_product_extrema_serial(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                                      const std::vector<std::vector<std::size_t>>& classes);
Extrema vertex_product_extrema_parallel(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                                        const std::vector<std::vector<std::size_t>>& classes);

inline Extrema vertex_product_extrema(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                                      const std::vector<std::vector<std::size_t>>& classes, Execution exec) {
    return exec == Execution::parallel ? vertex_product_extrema_parallel(vertices, classes)
                                       : vertex_product_extrema_serial(vertices, classes);
}

/// Number of vertex combinations the kernels will visit.
std::size_t combination_count(const std::vector<std::vector<std::vector<Rational>>>& vertices);

} // namespace kernels
} // namespace ccl
