#include "skyclear/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "skyclear/adaptive.hpp"
#include "skyclear/baseline.hpp"

namespace skyclear {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Top 53 bits of the engine output; exact dyadic rational in [0, 1), the
// same bits on every platform.
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

SimScene::SimScene(RadianceImage base_, CameraGeometry geom_)
    : base(std::move(base_)),
      profile(base.width()),
      geom(geom_),
      depth(base.width(), base.height()) {
    if (base.width() != geom.width() || base.height() != geom.height())
        throw std::invalid_argument("SimScene: base image must match the camera frame");
}

void composite_stars(RadianceImage& img, const std::vector<Star>& stars) {
    for (const Star& s : stars) {
        if (!(s.amplitude >= 0.0) || !(s.sigma > 0.0))
            throw std::invalid_argument("composite_stars: amplitude >= 0 and sigma > 0 required");
        const int reach = static_cast<int>(std::ceil(4.0 * s.sigma));
        const int c0 = std::max(0, static_cast<int>(std::floor(s.x)) - reach);
        const int c1 = std::min(img.width() - 1, static_cast<int>(std::ceil(s.x)) + reach);
        const int r0 = std::max(0, static_cast<int>(std::floor(s.y)) - reach);
        const int r1 = std::min(img.height() - 1, static_cast<int>(std::ceil(s.y)) + reach);
        const double inv2s2 = 1.0 / (2.0 * s.sigma * s.sigma);
        for (int r = r0; r <= r1; ++r) {
            for (int c = c0; c <= c1; ++c) {
                const double dx = c - s.x;
                const double dy = r - s.y;
                const double v = s.amplitude * std::exp(-(dx * dx + dy * dy) * inv2s2);
                for (int ch = 0; ch < kChannels; ++ch) img.at(ch, c, r) += v;
            }
        }
    }
}

std::vector<Star> synthetic_star_field(int width, int height, int stars, std::uint64_t seed) {
    if (width < 16 || height < 16)
        throw std::invalid_argument("synthetic_star_field: frame must be at least 16x16");
    if (stars < 0) throw std::invalid_argument("synthetic_star_field: star count must be >= 0");

    const double margin = std::min(8.0, (std::min(width, height) - 1) / 4.0);
    const double min_sep = 12.0;
    std::mt19937_64 rng(seed);

    std::vector<Star> out;
    out.reserve(stars);
    long attempts = 0;
    const long max_attempts = 1000L * std::max(stars, 1);
    while (static_cast<int>(out.size()) < stars) {
        if (++attempts > max_attempts)
            throw std::runtime_error(
                "synthetic_star_field: cannot place that many separated stars in this frame");
        const double x = margin + uniform01(rng) * (width - 1 - 2.0 * margin);
        const double y = margin + uniform01(rng) * (height - 1 - 2.0 * margin);
        bool clear = true;
        for (const Star& s : out) {
            const double dx = s.x - x;
            const double dy = s.y - y;
            if (dx * dx + dy * dy < min_sep * min_sep) {
                clear = false;
                break;
            }
        }
        if (!clear) continue;
        Star s;
        s.x = x;
        s.y = y;
        s.amplitude = 0.2 + 0.6 * uniform01(rng);
        s.sigma = 0.8 + 1.0 * uniform01(rng);
        out.push_back(s);
    }
    return out;
}

RadianceImage make_synthetic_sky(int width, int height, const ChannelTriple& top,
                                 const ChannelTriple& bottom, int stars, std::uint64_t seed) {
    if (width < 16 || height < 16)
        throw std::invalid_argument("make_synthetic_sky: frame must be at least 16x16");
    for (int ch = 0; ch < kChannels; ++ch)
        if (!std::isfinite(top[ch]) || top[ch] < 0.0 || !std::isfinite(bottom[ch]) ||
            bottom[ch] < 0.0)
            throw std::invalid_argument("make_synthetic_sky: gradient radiance must be >= 0");

    RadianceImage img(width, height);
    for (int ch = 0; ch < kChannels; ++ch) {
        for (int r = 0; r < height; ++r) {
            const double t = static_cast<double>(r) / (height - 1);
            const double v = top[ch] * (1.0 - t) + bottom[ch] * t;
            double* row = img.row(ch, r);
            std::fill(row, row + width, v);
        }
    }
    composite_stars(img, synthetic_star_field(width, height, stars, seed));
    return img;
}

std::vector<double> gaussian_noise_field(std::size_t count, double sigma, std::uint64_t seed) {
    std::vector<double> out(count, 0.0);
    if (!(sigma > 0.0) || count == 0) return out;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; i += 2) {
        const double u1 = std::max(uniform01(rng), 0x1.0p-53);
        const double u2 = uniform01(rng);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        out[i] = sigma * rad * std::cos(kTwoPi * u2);
        if (i + 1 < count) out[i + 1] = sigma * rad * std::sin(kTwoPi * u2);
    }
    return out;
}

RadianceImage synthesize(const SimScene& scene, SimMode mode) {
    if (scene.base.width() != scene.geom.width() || scene.base.height() != scene.geom.height())
        throw std::invalid_argument("synthesize: base image must match the camera frame");
    if (scene.depth.width() != scene.geom.width() ||
        scene.depth.height() != scene.geom.height())
        throw std::invalid_argument("synthesize: depth must match the camera frame");

    RadianceImage out = scene.base;
    composite_stars(out, scene.stars);

    const RadianceImage veil =
        mode == SimMode::Baseline
            ? pollution_image_baseline(BaselineParams(scene.a_const, scene.atm, scene.geom),
                                       scene.depth)
            : pollution_image_adaptive(scene.profile, scene.geom, scene.atm, scene.depth);
    auto& data = out.data();
    const auto& v = veil.data();
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += v[i];

    if (scene.noise_sigma > 0.0) {
        const std::vector<double> noise =
            gaussian_noise_field(data.size(), scene.noise_sigma, scene.noise_seed);
        for (std::size_t i = 0; i < data.size(); ++i)
            data[i] = std::max(data[i] + noise[i], 0.0);
    }
    return out;
}

}  // namespace skyclear
