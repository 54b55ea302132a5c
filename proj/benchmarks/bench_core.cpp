#include "presdist/gadgets.hpp"
#include "presdist/matching.hpp"
#include "presdist/solvers.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace presdist;

namespace {

BalPartInstance sample_instance(long long share, int k) {
    std::vector<long long> sizes;
    std::mt19937 rng(5);
    for (int b = 0; b < k; ++b) {
        long long left = share;
        while (left > 0) {
            const long long s = 1 + static_cast<long long>(rng()) % left;
            sizes.push_back(s);
            left -= s;
        }
    }
    return BalPartInstance(sizes, k);
}

CIInstance example_instance() {
    return CIInstance(3,
                      {{false, false, false}, {false, true, false}, {false, false, true}},
                      {{false, false, false}, {false, false, true}, {false, true, false}});
}

void bm_gadget_wasserstein(benchmark::State& state) {
    const auto inst = sample_instance(state.range(0), 5);
    const PExponent p = PExponent::integer(1);
    const auto gadget = build_balpart_trees(inst, p);
    const auto bm = barcode(gadget.tree_m);
    const auto bn = barcode(gadget.tree_n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wasserstein(bm, bn, p).cost);
    }
}
BENCHMARK(bm_gadget_wasserstein)->Arg(4)->Arg(6);

void bm_merge_barcode(benchmark::State& state) {
    const auto inst = sample_instance(6, 5);
    const auto gadget = build_balpart_trees(inst, PExponent::integer(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(barcode(gadget.tree_m));
    }
}
BENCHMARK(bm_merge_barcode);

void bm_solve_ci_gf3(benchmark::State& state) {
    const auto inst = example_instance();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_ci(inst, 3));
    }
}
BENCHMARK(bm_solve_ci_gf3);

void bm_ci_certificate(benchmark::State& state) {
    const auto inst = example_instance();
    const auto solution = solve_ci(inst, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ci_certificate(inst, *solution, PExponent::integer(1)));
    }
}
BENCHMARK(bm_ci_certificate);

void bm_field_rank(benchmark::State& state) {
    std::mt19937 rng(9);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    FieldMatrix m(n, n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() % 2);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(rank(m));
    }
}
BENCHMARK(bm_field_rank)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
