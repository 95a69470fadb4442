#include <skyclear/city.hpp>
#include <skyclear/types.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "raster_io_detail.hpp"

using namespace skyclear;
namespace fs = std::filesystem;

namespace {

std::string temp_file(const std::string& name) {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "skyclear_city_tests";
        fs::create_directories(p);
        return p;
    }();
    return (dir / name).string();
}

RadianceImage gray_image(int w, int h, const std::vector<double>& lum) {
    RadianceImage img(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < kChannels; ++ch)
                img.at(ch, c, r) = lum[static_cast<std::size_t>(r) * w + c];
    return img;
}

}  // namespace

TEST_CASE("GuidedFilterParams validation") {
    GuidedFilterParams p;
    CHECK_NOTHROW(p.validate());
    p.radius = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = GuidedFilterParams{};
    p.epsilon = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = GuidedFilterParams{};
    p.depth_scale = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("load_depth from 16-bit gray PNG uses raw sample values") {
    const int w = 6, h = 5;
    const std::string path = temp_file("depth16.png");
    std::vector<std::uint16_t> samples(static_cast<std::size_t>(w) * h, 100);
    samples[4 * 6 + 2] = 1250;
    detail::write_png(path, w, h, 1, 16, samples);

    // Sky above row 2 in every column.
    const SkyMask sky(w, h, std::vector<int>(w, 2));
    const DepthMap depth = load_depth(path, 2.0, sky);
    CHECK(depth.at(0, 0) == kInfiniteDepth);
    CHECK(depth.at(5, 1) == kInfiniteDepth);
    CHECK(depth.at(0, 2) == 200.0);
    CHECK(depth.at(2, 4) == 2500.0);
}

TEST_CASE("load_depth from 8-bit gray PNG") {
    const int w = 4, h = 4;
    const std::string path = temp_file("depth8.png");
    detail::write_png(path, w, h, 1, 8,
                      std::vector<std::uint16_t>(static_cast<std::size_t>(w) * h, 37));
    const DepthMap depth = load_depth(path, 10.0, SkyMask(w, h, std::vector<int>(w, 0)));
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) CHECK(depth.at(c, r) == 370.0);
}

TEST_CASE("depth PFM round trip preserves infinities and values") {
    const int w = 5, h = 4;
    std::vector<double> meters(static_cast<std::size_t>(w) * h, 125.5);
    meters[0] = kInfiniteDepth;
    meters[7] = 3200.25;
    const DepthMap depth(w, h, meters);

    const std::string path = temp_file("depth.pfm");
    save_depth(depth, path);
    const DepthMap back = load_depth(path, 1.0, SkyMask(w, h, std::vector<int>(w, 0)));
    REQUIRE(back.width() == w);
    CHECK(back.at(0, 0) == kInfiniteDepth);
    CHECK(back.at(2, 1) == 3200.25);   // exactly representable in float32
    CHECK(back.at(3, 3) == 125.5);
}

TEST_CASE("load_depth error paths") {
    const SkyMask sky(4, 4, std::vector<int>(4, 0));
    CHECK_THROWS_AS(load_depth(temp_file("none.pfm"), 1.0, sky), std::runtime_error);

    const std::string rgb = temp_file("rgb.png");
    detail::write_png(rgb, 4, 4, 3, 8, std::vector<std::uint16_t>(48, 10));
    CHECK_THROWS_AS(load_depth(rgb, 1.0, sky), std::runtime_error);

    const std::string small = temp_file("small.png");
    detail::write_png(small, 3, 3, 1, 8, std::vector<std::uint16_t>(9, 10));
    CHECK_THROWS_AS(load_depth(small, 1.0, sky), std::invalid_argument);

    const std::string ok = temp_file("ok.png");
    detail::write_png(ok, 4, 4, 1, 8, std::vector<std::uint16_t>(16, 10));
    CHECK_THROWS_AS(load_depth(ok, 0.0, sky), std::invalid_argument);
}

TEST_CASE("guided filter with a constant guide is a double box mean") {
    const int w = 24, h = 18, radius = 3;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> lum(n, 0.4);
    const RadianceImage guide = gray_image(w, h, lum);

    oracle::TestRng rng(21u);
    std::vector<double> t(n);
    for (double& v : t) v = rng.uniform(50.0, 150.0);
    const DepthMap target(w, h, t);

    GuidedFilterParams p;
    p.radius = radius;
    const DepthMap out = guided_filter(guide, target, p);

    const std::vector<char> valid(n, 1);
    const std::vector<double> once = oracle::masked_box_mean_ref(t, valid, w, h, radius);
    const std::vector<double> twice = oracle::masked_box_mean_ref(once, valid, w, h, radius);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(out.data()[i] - twice[i]) <= 1e-6);
    }
}

TEST_CASE("guided filter reproduces a target linear in the guide") {
    // t = 80*g + 2 everywhere: the local linear fits recover the global
    // relation, so the output must match the target almost exactly.
    const int w = 40, h = 30;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> lum(n);
    std::vector<double> t(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            lum[i] = (c < w / 2) ? 0.1 : 0.6;  // vertical step edge
            t[i] = 80.0 * lum[i] + 2.0;
        }
    }
    GuidedFilterParams p;
    p.radius = 6;
    p.epsilon = 1e-8;
    const DepthMap out = guided_filter(gray_image(w, h, lum), DepthMap(w, h, t), p);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(out.data()[i] - t[i]) <= 1e-3);
    }
}

TEST_CASE("guided filter keeps a sharp edge sharp") {
    const int w = 40, h = 20;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> lum(n);
    std::vector<double> t(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            lum[i] = c < 20 ? 0.1 : 0.6;
            t[i] = c < 20 ? 10.0 : 50.0;
        }
    }
    GuidedFilterParams p;
    p.radius = 8;
    p.epsilon = 1e-4;
    const DepthMap out = guided_filter(gray_image(w, h, lum), DepthMap(w, h, t), p);

    // Count columns that are neither near the low nor the high plateau;
    // the transition must not be wider than the guide edge plus 2 px.
    int blend_cols = 0;
    for (int c = 0; c < w; ++c) {
        const double v = out.at(c, 10);
        if (std::abs(v - 10.0) > 2.0 && std::abs(v - 50.0) > 2.0) ++blend_cols;
    }
    CHECK(blend_cols <= 3);
}

TEST_CASE("guided filter is stable on piecewise-constant pairs") {
    const int w = 48, h = 24;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> lum(n);
    std::vector<double> t(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            lum[i] = c < 24 ? 0.15 : 0.5;
            t[i] = c < 24 ? 400.0 : 900.0;
        }
    }
    GuidedFilterParams p;
    p.radius = 5;
    p.epsilon = 1e-6;
    const RadianceImage guide = gray_image(w, h, lum);
    const DepthMap once = guided_filter(guide, DepthMap(w, h, t), p);
    const DepthMap twice = guided_filter(guide, once, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(twice.data()[i] - once.data()[i]));
    }
    CHECK(worst <= 1e-3 * (900.0 - 400.0));
}

TEST_CASE("guided filter excludes sky from every statistic") {
    const int w = 30, h = 30;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> lum(n);
    std::vector<double> t(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            lum[i] = 0.05 + 0.01 * (c % 7);
            if (r < 12) {
                t[i] = kInfiniteDepth;  // sky band across the top
            } else {
                t[i] = 300.0 * lum[i] + 40.0;  // linear in the guide below
            }
        }
    }
    GuidedFilterParams p;
    p.radius = 10;  // windows straddle the sky boundary
    p.epsilon = 1e-10;
    const DepthMap out = guided_filter(gray_image(w, h, lum), DepthMap(w, h, t), p);

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            if (r < 12) {
                CHECK(out.at(c, r) == kInfiniteDepth);
            } else {
                CHECK(std::isfinite(out.at(c, r)));
                // Masked statistics still see an exactly linear relation.
                CHECK(std::abs(out.at(c, r) - t[i]) <= 1e-3);
            }
        }
    }

    // All-sky target passes through untouched.
    const DepthMap all_sky(w, h);
    const DepthMap still_sky = guided_filter(gray_image(w, h, lum), all_sky, p);
    for (double v : still_sky.data()) CHECK(v == kInfiniteDepth);
}

TEST_CASE("guided filter output respects the depth floor and dimensions") {
    const int w = 12, h = 10;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    // Depths barely above zero must not be driven to or below zero.
    std::vector<double> t(n, 5e-4);
    std::vector<double> lum(n, 0.2);
    GuidedFilterParams p;
    p.radius = 2;
    const DepthMap out = guided_filter(gray_image(w, h, lum), DepthMap(w, h, t), p);
    for (double v : out.data()) CHECK(v >= 1e-3);

    CHECK_THROWS_AS(
        guided_filter(gray_image(w, h + 1, std::vector<double>(
                                               static_cast<std::size_t>(w) * (h + 1), 0.2)),
                      DepthMap(w, h, t), p),
        std::invalid_argument);
}

TEST_CASE("restore_city with all-sky depth reduces to restore_adaptive") {
    const int w = 64, h = 40;
    const CameraGeometry geom(120.0, w, h);
    const Atmosphere atm(1e-4);
    const SkyMask mask = SkyMask::all_sky(w, h);

    RadianceImage calib(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch)
                calib.at(ch, c, r) = 0.06 + 0.10 * r / (h - 1.0);

    GroundLightProfile truth(w);
    for (int c = 0; c < w; ++c)
        for (int ch = 0; ch < 3; ++ch) truth.at(ch, c) = 0.3;

    const DepthMap sky(w, h);
    const RadianceImage veil = pollution_image_adaptive(truth, geom, atm, sky);
    RadianceImage polluted = calib;
    for (std::size_t i = 0; i < polluted.data().size(); ++i)
        polluted.data()[i] += veil.data()[i];

    const CalibrationSet cs = align_calibration(polluted, mask, calib, mask);
    const RestoreResult adaptive = restore_adaptive(polluted, cs, geom, atm, sky);
    const RestoreResult city =
        restore_city(polluted, cs, geom, atm, sky, GuidedFilterParams{});
    CHECK(oracle::bit_identical(adaptive.image, city.image));
    CHECK(adaptive.clamped_fraction == city.clamped_fraction);
}

TEST_CASE("restore_city leaves sky pixels identical to the adaptive path") {
    const int w = 64, h = 48;
    const CameraGeometry geom(120.0, w, h);
    const Atmosphere atm(1e-4);
    const int skyline_row = 24;
    const SkyMask mask(w, h, std::vector<int>(w, skyline_row));

    RadianceImage calib(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch)
                calib.at(ch, c, r) = r < skyline_row ? 0.06 + 0.004 * r : 0.02;

    // Ground truth depth: buildings at 300 m below the skyline.
    std::vector<double> d(static_cast<std::size_t>(w) * h, kInfiniteDepth);
    for (int r = skyline_row; r < h; ++r)
        for (int c = 0; c < w; ++c) d[static_cast<std::size_t>(r) * w + c] = 300.0;
    const DepthMap depth(w, h, d);

    GroundLightProfile truth(w);
    for (int c = 0; c < w; ++c)
        for (int ch = 0; ch < 3; ++ch) truth.at(ch, c) = 0.25;

    const RadianceImage veil = pollution_image_adaptive(truth, geom, atm, depth);
    RadianceImage polluted = calib;
    for (std::size_t i = 0; i < polluted.data().size(); ++i)
        polluted.data()[i] += veil.data()[i];

    const CalibrationSet cs = align_calibration(polluted, mask, calib, mask);
    const RestoreResult city =
        restore_city(polluted, cs, geom, atm, depth, GuidedFilterParams{});
    const RestoreResult adaptive = restore_adaptive(polluted, cs, geom, atm, DepthMap(w, h));

    for (int r = 0; r < skyline_row; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < 3; ++ch)
                CHECK(city.image.at(ch, c, r) == adaptive.image.at(ch, c, r));

    // The finite-depth veil is weaker than the sky veil, so the city
    // restoration keeps ground pixels brighter than the sky-model one.
    for (int r = skyline_row; r < h; ++r)
        for (int c = 0; c < w; ++c)
            CHECK(city.image.at(0, c, r) >= adaptive.image.at(0, c, r));

    // And it recovers the pristine ground values closely: the depth map is
    // constant below the skyline, so guided filtering barely changes it.
    for (int r = skyline_row; r < h; ++r)
        for (int c = 0; c < w; ++c)
            CHECK(std::abs(city.image.at(0, c, r) - calib.at(0, c, r)) <= 0.02);
}
