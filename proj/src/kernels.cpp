#include "ccl/kernels.hpp"

#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccl::kernels {

namespace {

/// Mixed-radix decode of a flat combination index, last space fastest.
void decode(std::size_t index, const std::vector<std::vector<std::vector<Rational>>>& vertices,
            std::vector<std::size_t>& digits) {
    for (std::size_t s = vertices.size(); s-- > 0;) {
        digits[s] = index % vertices[s].size();
        index /= vertices[s].size();
    }
}

Rational evaluate(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                  const std::vector<std::vector<std::size_t>>& classes, const std::vector<std::size_t>& digits) {
    Rational total = 0;
    Rational term;
    for (const auto& world : classes) {
        term = 1;
        for (std::size_t s = 0; s < world.size() && term != 0; ++s) term *= vertices[s][digits[s]][world[s]];
        total += term;
    }
    return total;
}

} // namespace

std::size_t combination_count(const std::vector<std::vector<std::vector<Rational>>>& vertices) {
    std::size_t total = 1;
    for (const auto& v : vertices) {
        if (v.empty()) return 0;
        if (total > std::numeric_limits<std::size_t>::max() / v.size())
            return std::numeric_limits<std::size_t>::max();
        total *= v.size();
    }
    return total;
}

Extrema vertex_product_extrema_serial(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                                      const std::vector<std::vector<std::size_t>>& classes) {
    const std::size_t total = combination_count(vertices);
    if (total == 0) throw std::invalid_argument("a marginal polytope has no vertices");

    std::vector<std::size_t> digits(vertices.size());
    Extrema out;
    for (std::size_t c = 0; c < total; ++c) {
        decode(c, vertices, digits);
        Rational v = evaluate(vertices, classes, digits);
        if (c == 0 || v < out.min) out.min = v;
        if (c == 0 || v > out.max) out.max = v;
    }
    return out;
}

Extrema vertex_product_extrema_parallel(const std::vector<std::vector<std::vector<Rational>>>& vertices,
                                        const std::vector<std::vector<std::size_t>>& classes) {
    const std::size_t total = combination_count(vertices);
    if (total == 0) throw std::invalid_argument("a marginal polytope has no vertices");

    Extrema out;
    bool have = false;
    const auto n = static_cast<long long>(total);

#pragma omp parallel
    {
        std::vector<std::size_t> digits(vertices.size());
        Rational local_min;
        Rational local_max;
        bool local_have = false;

#pragma omp for schedule(static)
        for (long long c = 0; c < n; ++c) {
            decode(static_cast<std::size_t>(c), vertices, digits);
            Rational v = evaluate(vertices, classes, digits);
            if (!local_have || v < local_min) local_min = v;
            if (!local_have || v > local_max) local_max = v;
            local_have = true;
        }

#pragma omp critical(ccl_vertex_product_reduce)
        if (local_have) {
            if (!have || local_min < out.min) out.min = local_min;
            if (!have || local_max > out.max) out.max = local_max;
            have = true;
        }
    }
    return out;
}

} // namespace ccl::kernels
