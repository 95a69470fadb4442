// Whole-image benchmarks: the quasi-quartile filter, the guided depth
// filter, and the pollution images of both restoration models.
#include <skyclear/adaptive.hpp>
#include <skyclear/baseline.hpp>
#include <skyclear/city.hpp>
#include <skyclear/simulate.hpp>
#include <skyclear/types.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace skyclear;

namespace {

RadianceImage test_frame(int w, int h) {
    return make_synthetic_sky(w, h, {0.08, 0.08, 0.08}, {0.2, 0.19, 0.18}, 40, 3);
}

DepthMap test_depth(int w, int h) {
    std::vector<double> d(static_cast<std::size_t>(w) * h, kInfiniteDepth);
    for (int r = h / 2; r < h; ++r)
        for (int c = 0; c < w; ++c)
            d[static_cast<std::size_t>(r) * w + c] = 300.0 + 10.0 * (c % 60);
    return DepthMap(w, h, d);
}

}  // namespace

static void BM_QuasiQuartile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) row[i] = 0.1 + 0.05 * std::sin(i * 0.01) + 0.3 * (i % 97 == 0);
    for (auto _ : state) benchmark::DoNotOptimize(quasi_quartile(row, 31));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_QuasiQuartile)->Arg(512)->Arg(4096);

static void BM_GuidedFilter(benchmark::State& state) {
    const int w = 512, h = 341;
    const RadianceImage guide = test_frame(w, h);
    const DepthMap depth = test_depth(w, h);
    for (auto _ : state) benchmark::DoNotOptimize(guided_filter(guide, depth, {}));
    state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_GuidedFilter);

static void BM_PollutionBaseline(benchmark::State& state) {
    const int w = 128, h = 85;
    const CameraGeometry geom(128.0, w, h);
    const BaselineParams p({0.01, 0.01, 0.01}, Atmosphere(1e-3), geom);
    const DepthMap depth(w, h);
    for (auto _ : state) benchmark::DoNotOptimize(pollution_image_baseline(p, depth));
    state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_PollutionBaseline);

static void BM_PollutionAdaptive(benchmark::State& state) {
    const int w = 512, h = 341;
    const CameraGeometry geom(512.0, w, h);
    const Atmosphere atm(1e-4);
    GroundLightProfile profile(w);
    for (int ch = 0; ch < kChannels; ++ch)
        for (int c = 0; c < w; ++c) profile.at(ch, c) = 0.2 + 0.1 * c / (w - 1.0);
    const DepthMap depth = test_depth(w, h);
    for (auto _ : state)
        benchmark::DoNotOptimize(pollution_image_adaptive(profile, geom, atm, depth));
    state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_PollutionAdaptive);

static void BM_RestoreAdaptive(benchmark::State& state) {
    const int w = 512, h = 341;
    const CameraGeometry geom(512.0, w, h);
    const Atmosphere atm(1e-4);
    const RadianceImage calib = test_frame(w, h);
    GroundLightProfile profile(w);
    for (int ch = 0; ch < kChannels; ++ch)
        for (int c = 0; c < w; ++c) profile.at(ch, c) = 0.25;
    const DepthMap sky(w, h);
    const RadianceImage veil = pollution_image_adaptive(profile, geom, atm, sky);
    RadianceImage polluted = calib;
    for (std::size_t i = 0; i < polluted.data().size(); ++i)
        polluted.data()[i] += veil.data()[i];
    const CalibrationSet cal = align_calibration(polluted, SkyMask::all_sky(w, h), calib,
                                                 SkyMask::all_sky(w, h));
    for (auto _ : state)
        benchmark::DoNotOptimize(restore_adaptive(polluted, cal, geom, atm, sky));
    state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_RestoreAdaptive);

BENCHMARK_MAIN();
