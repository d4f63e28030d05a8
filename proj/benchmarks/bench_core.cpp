#include <benchmark/benchmark.h>

#include <vector>

#include "strichartz/closed_forms.hpp"
#include "strichartz/lens.hpp"
#include "strichartz/measure_quadrature.hpp"
#include "strichartz/optimizer.hpp"
#include "strichartz/propagators.hpp"

using namespace strichartz;

namespace {

EvolutionSpec spec_for(Equation e, int dim, int slices, double T) {
    EvolutionSpec s;
    s.equation = e;
    s.dim = dim;
    s.times = {slices, T};
    s.boundary = {1.0, 1.0};
    return s;
}

void BM_FourierRoundTrip(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
    const ComplexField f = sample_gaussian_maximizer(canonical_gaussian(dim, Space::physical), Grid(dim, n, 8.0));
    for (auto _ : st) benchmark::DoNotOptimize(inverse_fourier(forward_fourier(f)));
}
BENCHMARK(BM_FourierRoundTrip)->Args({1, 2048})->Args({2, 256})->Args({3, 64});

void BM_SchrodingerQuotient(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    const Grid g = dim == 1 ? Grid(1, 2048, 20.0) : Grid(2, 128, 16.0);
    const ComplexField f = sample_gaussian_maximizer(canonical_gaussian(dim, Space::physical), g);
    const EvolutionSpec spec = spec_for(Equation::schrodinger, dim, 64, 2.0);
    for (auto _ : st) benchmark::DoNotOptimize(strichartz_quotient_schrodinger(f, spec));
}
BENCHMARK(BM_SchrodingerQuotient)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_WaveWindowGradient(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    const Grid g = dim == 2 ? Grid(2, 32, 8.0) : Grid(3, 16, 6.0);
    const WaveSplitPair w = sample_cone_maximizer(canonical_cone_params(dim), g);
    const EvolutionSpec spec = spec_for(Equation::wave, dim, 32, 3.0);
    const int os = window_oversample(spec, AscentConfig{});
    for (auto _ : st) benchmark::DoNotOptimize(quotient_gradient(w, spec, os));
}
BENCHMARK(BM_WaveWindowGradient)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LensPowerRatio(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    const HermiteLens lens(dim, dim == 1 ? 24 : 16);
    std::vector<cplx> a(lens.size(), cplx{0.0, 0.0}), grad;
    a[0] = 1.0;
    a[1] = 0.3;
    for (auto _ : st) benchmark::DoNotOptimize(lens.power_ratio(a, &grad));
}
BENCHMARK(BM_LensPowerRatio)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_WaveClosedForm(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    const ConeExpParams p = canonical_cone_params(dim);
    for (auto _ : st) benchmark::DoNotOptimize(wave_quotient_closed_form(p));
}
BENCHMARK(BM_WaveClosedForm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ConvolutionOracle(benchmark::State& st) {
    const MeasureSpec spec{Surface::cone_plus, 2, MeasureWeight::inverse_norm, 3};
    const FreqPoint pt{2.0, {0.5, 0.7}};
    for (auto _ : st) benchmark::DoNotOptimize(convolution_oracle(spec, pt));
}
BENCHMARK(BM_ConvolutionOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
