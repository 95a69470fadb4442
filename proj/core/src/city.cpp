#include "skyclear/city.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "raster_io_detail.hpp"

namespace skyclear {

void GuidedFilterParams::validate() const {
    if (radius < 1) throw std::invalid_argument("GuidedFilterParams: radius must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("GuidedFilterParams: epsilon must be > 0");
    if (!(depth_scale > 0.0))
        throw std::invalid_argument("GuidedFilterParams: depth_scale must be > 0");
}

DepthMap load_depth(const std::string& path, double scale, const SkyMask& sky) {
    if (!(scale > 0.0)) throw std::invalid_argument("load_depth: scale must be > 0");

    int w = 0;
    int h = 0;
    std::vector<double> meters;
    if (detail::has_suffix(path, ".pfm")) {
        detail::RawPfm raw = detail::read_pfm(path);
        if (raw.channels != 1)
            throw std::runtime_error("expected a single-channel PFM depth map: " + path);
        w = raw.width;
        h = raw.height;
        meters.assign(raw.samples.begin(), raw.samples.end());
        for (double& m : meters) m *= scale;
    } else {
        detail::RawPng raw = detail::read_png(path);
        if (raw.channels != 1)
            throw std::runtime_error("expected a gray PNG depth map: " + path);
        w = raw.width;
        h = raw.height;
        meters.resize(raw.samples.size());
        // Integer sample values are depths in map units, not normalized.
        for (std::size_t i = 0; i < meters.size(); ++i) meters[i] = raw.samples[i] * scale;
    }

    if (w != sky.width() || h != sky.height())
        throw std::invalid_argument("load_depth: depth dimensions differ from the target image");
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (sky.is_sky(c, r)) meters[static_cast<std::size_t>(r) * w + c] = kInfiniteDepth;
    return DepthMap(w, h, std::move(meters));
}

void save_depth(const DepthMap& depth, const std::string& path) {
    std::vector<float> samples(depth.data().size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = static_cast<float>(depth.data()[i]);
    detail::write_pfm(path, depth.width(), depth.height(), 1, samples);
}

namespace {

// Sliding box sum with clipped borders, via separable prefix sums.
std::vector<double> box_sum(const std::vector<double>& src, int w, int h, int radius) {
    std::vector<double> tmp(src.size()), out(src.size());
    std::vector<double> prefix(std::max(w, h) + 1);

    for (int r = 0; r < h; ++r) {
        const double* row = src.data() + static_cast<std::size_t>(r) * w;
        prefix[0] = 0.0;
        for (int c = 0; c < w; ++c) prefix[c + 1] = prefix[c] + row[c];
        double* trow = tmp.data() + static_cast<std::size_t>(r) * w;
        for (int c = 0; c < w; ++c)
            trow[c] = prefix[std::min(c + radius + 1, w)] - prefix[std::max(c - radius, 0)];
    }
    for (int c = 0; c < w; ++c) {
        prefix[0] = 0.0;
        for (int r = 0; r < h; ++r)
            prefix[r + 1] = prefix[r] + tmp[static_cast<std::size_t>(r) * w + c];
        for (int r = 0; r < h; ++r)
            out[static_cast<std::size_t>(r) * w + c] =
                prefix[std::min(r + radius + 1, h)] - prefix[std::max(r - radius, 0)];
    }
    return out;
}

}  // namespace

DepthMap guided_filter(const RadianceImage& guide, const DepthMap& target,
                       const GuidedFilterParams& p) {
    p.validate();
    const int w = target.width();
    const int h = target.height();
    if (guide.width() != w || guide.height() != h)
        throw std::invalid_argument("guided_filter: guide and target dimensions differ");

    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> g(n), t(n), mask(n), gg(n), gt(n);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            g[i] = guide.luminance(c, r);
            const bool valid = target.valid(c, r);
            mask[i] = valid ? 1.0 : 0.0;
            t[i] = valid ? target.at(c, r) : 0.0;  // zeroed, never multiplied as inf
            gg[i] = g[i] * g[i] * mask[i];
            gt[i] = g[i] * t[i];
        }
    }
    std::vector<double> gm(n);
    for (std::size_t i = 0; i < n; ++i) gm[i] = g[i] * mask[i];

    const std::vector<double> count = box_sum(mask, w, h, p.radius);
    const std::vector<double> sum_g = box_sum(gm, w, h, p.radius);
    const std::vector<double> sum_t = box_sum(t, w, h, p.radius);
    const std::vector<double> sum_gg = box_sum(gg, w, h, p.radius);
    const std::vector<double> sum_gt = box_sum(gt, w, h, p.radius);

    std::vector<double> a(n, 0.0), b(n, 0.0), have(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(count[i] > 0.5)) continue;  // window entirely sky: no statistics
        const double inv = 1.0 / count[i];
        const double mean_g = sum_g[i] * inv;
        const double mean_t = sum_t[i] * inv;
        const double var_g = sum_gg[i] * inv - mean_g * mean_g;
        const double cov = sum_gt[i] * inv - mean_g * mean_t;
        a[i] = cov / (var_g + p.epsilon);
        b[i] = mean_t - a[i] * mean_g;
        have[i] = 1.0;
    }

    const std::vector<double> sum_a = box_sum(a, w, h, p.radius);
    const std::vector<double> sum_b = box_sum(b, w, h, p.radius);
    const std::vector<double> num = box_sum(have, w, h, p.radius);

    DepthMap out(w, h);  // starts all infinite
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!target.valid(c, r)) continue;  // sky passes through as infinity
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            // Every window around a valid pixel contains that pixel, so
            // num >= 1 here.
            const double val = (sum_a[i] * g[i] + sum_b[i]) / num[i];
            out.at(c, r) = std::max(val, 1e-3);
        }
    }
    return out;
}

RestoreResult restore_city(const RadianceImage& polluted, const CalibrationSet& cal,
                           const CameraGeometry& geom, const Atmosphere& atm,
                           const DepthMap& depth_raw, const GuidedFilterParams& gf) {
    const DepthMap filtered = guided_filter(polluted, depth_raw, gf);
    return restore_adaptive(polluted, cal, geom, atm, filtered);
}

}  // namespace skyclear
