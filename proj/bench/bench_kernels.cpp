#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "ccl/kernels.hpp"
#include "ccl/ranking.hpp"

namespace {

struct Instance {
    std::vector<std::vector<std::vector<ccl::Rational>>> vertices;
    std::vector<std::vector<std::size_t>> classes;
};

// Random simplex points stand in for polytope vertices; the kernels only
// need dense vectors over classes.
Instance make_instance(std::size_t spaces, std::size_t vertices_per_space, std::size_t classes_per_space,
                       std::size_t satisfying) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> weight(0, 9);
    Instance inst;
    for (std::size_t s = 0; s < spaces; ++s) {
        auto& space = inst.vertices.emplace_back();
        for (std::size_t v = 0; v < vertices_per_space; ++v) {
            std::vector<ccl::Rational> point(classes_per_space);
            ccl::Rational total = 0;
            for (auto& x : point) total += (x = weight(rng) + 1);
            for (auto& x : point) x /= total;
            space.push_back(std::move(point));
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, classes_per_space - 1);
    for (std::size_t w = 0; w < satisfying; ++w) {
        auto& row = inst.classes.emplace_back();
        for (std::size_t s = 0; s < spaces; ++s) row.push_back(pick(rng));
    }
    return inst;
}

void BM_VertexProductSerial(benchmark::State& state) {
    const auto inst = make_instance(3, std::size_t(state.range(0)), 6, 40);
    for (auto _ : state)
        benchmark::DoNotOptimize(ccl::kernels::vertex_product_extrema_serial(inst.vertices, inst.classes));
}

void BM_VertexProductParallel(benchmark::State& state) {
    const auto inst = make_instance(3, std::size_t(state.range(0)), 6, 40);
    for (auto _ : state)
        benchmark::DoNotOptimize(ccl::kernels::vertex_product_extrema_parallel(inst.vertices, inst.classes));
}

ccl::ranking::RankingDataset sample_rankings(std::size_t n, std::size_t count) {
    std::mt19937_64 rng(11);
    ccl::ranking::RankingDataset d;
    for (std::size_t i = 0; i < n; ++i) d.names.push_back("o" + std::to_string(i));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < count; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        d.rankings.push_back(perm);
    }
    return d;
}

void BM_RankingPairs(benchmark::State& state, ccl::Execution execution) {
    const auto data = sample_rankings(std::size_t(state.range(0)), 30);
    ccl::ranking::EvaluationOptions options;
    options.execution = execution;
    for (auto _ : state) benchmark::DoNotOptimize(ccl::ranking::evaluate(data, options));
}

} // namespace

BENCHMARK(BM_VertexProductSerial)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VertexProductParallel)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RankingPairs, serial, ccl::Execution::serial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RankingPairs, parallel, ccl::Execution::parallel)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
