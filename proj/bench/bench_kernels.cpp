// Serial reference vs OpenMP kernels. Run: ./ewl_bench --benchmark_filter=Gate
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "ewl/kernels.hpp"
#include "ewl/protocol.hpp"

using namespace ewl;

namespace {

std::vector<Amplitude> random_amps(int m) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Amplitude> a(std::size_t{1} << m);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    return a;
}

const Gate::Matrix &test_gate() {
    static const auto g = build_gate({1.1, 0.4, 2.3}).matrix();
    return g;
}

template <auto Kernel>
void BM_Gate(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    auto a = random_amps(m);
    for (auto _ : state) {
        for (int bit = 0; bit < m; ++bit) {
            Kernel(a, bit, test_gate());
        }
        benchmark::DoNotOptimize(a.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size()) * m);
}

template <auto Kernel>
void BM_Entangler(benchmark::State &state) {
    const auto in = random_amps(static_cast<int>(state.range(0)));
    std::vector<Amplitude> out(in.size());
    for (auto _ : state) {
        Kernel(in, out, false);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.size()));
}

// The optimizer's grid scan: driver payoffs over a g^3 parameter grid.
template <auto Kernel>
void BM_GridArgmax(benchmark::State &state) {
    const auto g = static_cast<std::size_t>(state.range(0));
    const kernels::IndexFunction f = [g](std::size_t i) {
        const double pi = 3.141592653589793;
        const UnitaryParams u{pi * static_cast<double>(i / (g * g)) / static_cast<double>(g - 1),
                              2 * pi * static_cast<double>((i / g) % g) / static_cast<double>(g),
                              2 * pi * static_cast<double>(i % g) / static_cast<double>(g)};
        return simulated_driver_payoff(5, 20.0, u);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(g * g * g, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g * g * g));
}

} // namespace

BENCHMARK(BM_Gate<kernels::serial::apply_gate>)->Name("Gate/serial")->DenseRange(12, 22, 5);
BENCHMARK(BM_Gate<kernels::parallel::apply_gate>)->Name("Gate/parallel")->DenseRange(12, 22, 5);
BENCHMARK(BM_Entangler<kernels::serial::apply_entangler>)
    ->Name("Entangler/serial")
    ->DenseRange(12, 22, 5);
BENCHMARK(BM_Entangler<kernels::parallel::apply_entangler>)
    ->Name("Entangler/parallel")
    ->DenseRange(12, 22, 5);
BENCHMARK(BM_GridArgmax<kernels::serial::argmax>)->Name("GridArgmax/serial")->Arg(17)->Arg(33);
BENCHMARK(BM_GridArgmax<kernels::parallel::argmax>)
    ->Name("GridArgmax/parallel")
    ->Arg(17)
    ->Arg(33);

BENCHMARK_MAIN();
