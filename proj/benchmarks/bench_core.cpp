#include <benchmark/benchmark.h>

#include "qh/pole_space.hpp"
#include "qh/special.hpp"

using namespace qh;

static void BM_LogGamma(benchmark::State& state) {
    cplx z(0.3, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(z));
        z += cplx(0.0, 0.37);
    }
}
BENCHMARK(BM_LogGamma);

static void BM_RhoInf(benchmark::State& state) {
    cplx z(0.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho_inf(z));
        z += cplx(0.0, 0.37);
    }
}
BENCHMARK(BM_RhoInf);

static void BM_ResidueCoeffsPrime(benchmark::State& state) {
    ResidueOptions o;
    o.prime_terms = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(residue_coeffs(FactorSpec::prime(2), 128, o));
}
BENCHMARK(BM_ResidueCoeffsPrime)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_LineQuadrature(benchmark::State& state) {
    const auto spec = parse_spec(state.range(0) ? "p:2" : "inf");
    for (auto _ : state) benchmark::DoNotOptimize(line_quadrature_coeffs(spec, -40, -1));
}
BENCHMARK(BM_LineQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_HankelSvd(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto h = hankel_truncation(residue_coeffs(parse_spec("inf*p:2"), 2 * n), n);
    for (auto _ : state) benchmark::DoNotOptimize(singular_values(h));
}
BENCHMARK(BM_HankelSvd)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_PoleSpace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pole_space_profile(parse_spec("inf*p:2"), n));
}
BENCHMARK(BM_PoleSpace)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
