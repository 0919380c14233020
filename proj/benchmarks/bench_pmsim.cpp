#include <benchmark/benchmark.h>

#include "pmsim/config.hpp"
#include "pmsim/pipeline.hpp"
#include "pmsim/schmidt.hpp"
#include "pmsim/transfer.hpp"

namespace {

// Grid step stays at the 1024-point default; the window scales with the count.
pmsim::Scenario scenario(std::size_t count) {
    pmsim::Config c;
    c.grid.count = count;
    c.grid.half_width_over_g_mu = 3.0 * static_cast<double>(count) / 1024.0;
    return pmsim::resolve(c);
}

void BM_TransferEval(benchmark::State& state) {
    const pmsim::Scenario s = scenario(1024);
    const pmsim::ModeResponse mode = pmsim::mode_response(s.params, pmsim::FieldLabel::Signal);
    double w = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mode(w));
        w = w > 3.0 ? -3.0 : w + 1e-3;
    }
}
BENCHMARK(BM_TransferEval);

void BM_Convolve(benchmark::State& state) {
    const pmsim::Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmsim::convolve(s.pump, s.params, s.idler_grid, s.signal_grid, s.quadrature));
    }
}
BENCHMARK(BM_Convolve)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_BuildJsa(benchmark::State& state) {
    const pmsim::Scenario s = scenario(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pmsim::build_jsa(s));
}
BENCHMARK(BM_BuildJsa)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_SchmidtBinWindow(benchmark::State& state) {
    const pmsim::Scenario s = scenario(1024);
    const pmsim::Jsa window = pmsim::upper_bin_window(pmsim::build_jsa(s), s.params, s.bin_window_over_delta);
    for (auto _ : state) benchmark::DoNotOptimize(pmsim::schmidt_number(window));
}
BENCHMARK(BM_SchmidtBinWindow)->Unit(benchmark::kMillisecond);

void BM_SchmidtFull(benchmark::State& state) {
    const pmsim::Jsa jsa = pmsim::build_jsa(scenario(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(pmsim::schmidt_number(jsa));
}
BENCHMARK(BM_SchmidtFull)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
