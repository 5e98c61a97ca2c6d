#include <benchmark/benchmark.h>

#include "ghzmux/metrics/metrics.hpp"
#include "ghzmux/protocol/factorized.hpp"
#include "ghzmux/protocol/run.hpp"

namespace
{

ghzmux::protocol::ProtocolConfig
config(int M, int N)
{
    ghzmux::protocol::ProtocolConfig c;
    c.M     = M;
    c.N     = N;
    c.L0_km = 25.0;
    c.device.x = 0.1 * M;
    return c;
}

void
BM_Trial(benchmark::State& state, ghzmux::protocol::Backend backend)
{
    const auto c     = config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto qudit = ghzmux::protocol::prepare_qudit(c);
    for (auto _ : state)
        benchmark::DoNotOptimize(ghzmux::protocol::evaluate_trial(c, qudit, backend));
}

void
BM_FactorizedVsSize(benchmark::State& state)
{
    BM_Trial(state, ghzmux::protocol::Backend::factorized);
}

void
BM_BruteVsSize(benchmark::State& state)
{
    BM_Trial(state, ghzmux::protocol::Backend::brute);
}

void
BM_NoisyRun(benchmark::State& state)
{
    auto c        = config(2, 3);
    c.qudit_noise = {0.1, 0.1};
    c.trials      = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ghzmux::protocol::run_protocol(c, ghzmux::protocol::Backend::factorized));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void
BM_EfficiencyClosedForm(benchmark::State& state)
{
    const ghzmux::noise::DeviceParams dev{0.9, 0.01, 0.01, 0.3};
    double                            L = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghzmux::metrics::efficiency_breakdown(3, 3, L, 0.9216, dev));
        L = L < 50.0 ? L + 0.5 : 0.0;
    }
}

}  // namespace

BENCHMARK(BM_FactorizedVsSize)->Args({1, 2})->Args({2, 3})->Args({3, 3})->Args({2, 4})->Args({4, 5})->Args({5, 6});
BENCHMARK(BM_BruteVsSize)->Args({1, 2})->Args({2, 3})->Args({2, 4});
BENCHMARK(BM_NoisyRun)->Arg(10)->Arg(100);
BENCHMARK(BM_EfficiencyClosedForm);
BENCHMARK_MAIN();
