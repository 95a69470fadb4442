// Microbenchmarks of the scattering primitives: both E1 branches, the
// closed-form altitude irradiance against its quadrature cross-check, and
// the per-pixel alpha factor.
#include <skyclear/adaptive.hpp>
#include <skyclear/scattering.hpp>
#include <skyclear/types.hpp>

#include <benchmark/benchmark.h>

using namespace skyclear;

static void BM_E1_Series(benchmark::State& state) {
    double u = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_integral_e1(u));
        u = u < 0.9 ? u * 1.001 : 1e-3;  // stay on the series branch
    }
}
BENCHMARK(BM_E1_Series);

static void BM_E1_ContinuedFraction(benchmark::State& state) {
    double u = 1.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_integral_e1(u));
        u = u < 40.0 ? u * 1.001 : 1.5;
    }
}
BENCHMARK(BM_E1_ContinuedFraction);

static void BM_IrradianceClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(irradiance_at_altitude(0.3, 1e-4, 500.0));
}
BENCHMARK(BM_IrradianceClosedForm);

static void BM_IrradianceQuadrature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(irradiance_at_altitude_quadrature(0.3, 1e-4, 500.0));
}
BENCHMARK(BM_IrradianceQuadrature);

static void BM_AlphaFactor(benchmark::State& state) {
    const CameraGeometry geom(1024.0, 1024, 683);
    const Atmosphere atm(1e-4);
    double x = -500.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_factor(geom, atm, x, 120.0, 800.0));
        x = x < 500.0 ? x + 1.0 : -500.0;
    }
}
BENCHMARK(BM_AlphaFactor);

BENCHMARK_MAIN();
