#include <benchmark/benchmark.h>

#include <numbers>

#include "dirac/fourier.hpp"
#include "dirac/presets.hpp"
#include "dirac/steppers.hpp"
#include "dirac/symbol_table.hpp"

using namespace dirac;
constexpr double kPi = std::numbers::pi;

namespace {

void bm_fft_round_trip_1d(benchmark::State& state) {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, state.range(0));
    FourierTransform fft(g);
    SpinorField f = preset_1d_convergence().make_initial(g);
    for (auto _ : state) {
        fft.to_fourier_inplace(f);
        fft.from_fourier_inplace(f);
        benchmark::DoNotOptimize(f.component(0).data());
    }
}
BENCHMARK(bm_fft_round_trip_1d)->Arg(128)->Arg(1024)->Arg(8192);

void bm_fft_round_trip_2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    GridPtr g = make_grid_2d({-15.0, -15.0}, {15.0, 15.0}, {n, n});
    FourierTransform fft(g);
    SpinorField f = preset_2d_honeycomb().make_initial(g);
    for (auto _ : state) {
        fft.to_fourier_inplace(f);
        fft.from_fourier_inplace(f);
        benchmark::DoNotOptimize(f.component(0).data());
    }
}
BENCHMARK(bm_fft_round_trip_2d)->Arg(64)->Arg(128)->Arg(256);

void bm_symbol_table_build(benchmark::State& state) {
    GridPtr g = make_grid_1d(0.0, 2.0 * kPi, state.range(0));
    for (auto _ : state) {
        SymbolTable sym(g, 0.01);
        benchmark::DoNotOptimize(&sym);
    }
}
BENCHMARK(bm_symbol_table_build)->Arg(128)->Arg(4096);

void bm_step_1d(benchmark::State& state, Method method) {
    const ScenarioPreset& p = preset_1d_convergence();
    GridPtr g = p.make_grid(128);
    Stepper st(method, g, p.make_potential(1.0), 0.001);
    st.initialize(p.make_initial(g));
    for (auto _ : state) st.step();
}
BENCHMARK_CAPTURE(bm_step_1d, ewi_fp, Method::EWI);
BENCHMARK_CAPTURE(bm_step_1d, sewi_fp, Method::SEWI);
BENCHMARK_CAPTURE(bm_step_1d, tsfp, Method::TSFP);

void bm_step_2d(benchmark::State& state, Method method) {
    const ScenarioPreset& p = preset_2d_honeycomb();
    GridPtr g = p.make_grid(128);
    Stepper st(method, g, p.make_potential(1.0), 0.001);
    st.initialize(p.make_initial(g));
    for (auto _ : state) st.step();
}
BENCHMARK_CAPTURE(bm_step_2d, ewi_fp, Method::EWI);
BENCHMARK_CAPTURE(bm_step_2d, sewi_fp, Method::SEWI);
BENCHMARK_CAPTURE(bm_step_2d, tsfp, Method::TSFP);

} // namespace

BENCHMARK_MAIN();
