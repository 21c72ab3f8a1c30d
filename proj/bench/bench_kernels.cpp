// Serial reference vs OpenMP kernels, plus whole traces.

#include <benchmark/benchmark.h>

#include <random>

#include "certpath/bounds.hpp"
#include "certpath/continuation.hpp"
#include "certpath/fixtures.hpp"
#include "certpath/kernels.hpp"

using namespace certpath;
using cd = std::complex<double>;

namespace {

BivPoly<double> random_curve(int deg_y, int deg_x, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<UniPoly<double>> ys;
    for (int k = 0; k <= deg_y; ++k) {
        std::vector<cd> c(static_cast<std::size_t>(deg_x + 1));
        for (auto& v : c) v = cd(u(rng), u(rng)) * 0.7;
        ys.push_back(UniPoly<double>::exact(c));
    }
    return BivPoly<double>(ys);
}

struct Case {
    BivPoly<double> f, g;
    std::vector<cd> base, xs;
};

Case make_case(std::size_t n) {
    std::mt19937_64 rng(7);
    Case c{random_curve(4, 4, rng), random_curve(3, 4, rng), {}, {}};
    c.base = fiber(c.f, cd(0.1, 0.05)).roots;
    std::uniform_real_distribution<double> u(-0.01, 0.01);
    for (std::size_t i = 0; i < n; ++i) c.xs.push_back(cd(0.1, 0.05) + cd(u(rng), u(rng)));
    return c;
}

template <bool Parallel>
void BM_fiber_displacements(benchmark::State& state) {
    const Case c = make_case(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto d = Parallel ? kernels::parallel::fiber_displacements<double>(c.f, c.base, c.xs, 1e-13)
                          : kernels::serial::fiber_displacements<double>(c.f, c.base, c.xs, 1e-13);
        benchmark::DoNotOptimize(d.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_sylvester_determinants(benchmark::State& state) {
    const Case c = make_case(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto d = Parallel ? kernels::parallel::sylvester_determinants<double>(c.f, c.g, c.xs)
                          : kernels::serial::sylvester_determinants<double>(c.f, c.g, c.xs);
        benchmark::DoNotOptimize(d.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_newton_trace(benchmark::State& state) {
    const auto f = fixtures::newton_curve<double>(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto log = trace_curve(f, fixtures::newton_path<double>(), cd(1));
        benchmark::DoNotOptimize(log.steps.data());
    }
}

void BM_newton_trace_mp(benchmark::State& state) {
    set_mp_precision_bits(128);
    const auto f = fixtures::newton_curve<MpReal>(MpReal(static_cast<long>(state.range(0))));
    for (auto _ : state) {
        auto log = trace_curve(f, fixtures::newton_path<MpReal>(), Complex<MpReal>(1));
        benchmark::DoNotOptimize(log.steps.data());
    }
}

}  // namespace

BENCHMARK(BM_fiber_displacements<false>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fiber_displacements<true>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sylvester_determinants<false>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sylvester_determinants<true>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_newton_trace)->Arg(10)->Arg(1000)->Arg(30000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_newton_trace_mp)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
