#include "skyclear/skyline.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace skyclear {

namespace {

// Otsu threshold over 256 uniform bins spanning [lo, hi].  Returns the bin
// upper edge that maximises between-class variance, or nullopt when the data
// has no spread at all.
std::optional<double> otsu_threshold(const std::vector<double>& values) {
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) return std::nullopt;

    constexpr int kBins = 256;
    std::array<int, kBins> hist{};
    const double scale = kBins / (hi - lo);
    for (double v : values) {
        int b = static_cast<int>((v - lo) * scale);
        b = std::clamp(b, 0, kBins - 1);
        ++hist[b];
    }

    const double total = static_cast<double>(values.size());
    double sum_all = 0.0;
    for (int b = 0; b < kBins; ++b) sum_all += b * static_cast<double>(hist[b]);

    double w0 = 0.0, sum0 = 0.0, best_var = -1.0;
    int best_bin = -1;
    for (int b = 0; b < kBins - 1; ++b) {
        w0 += hist[b];
        if (w0 == 0.0) continue;
        const double w1 = total - w0;
        if (w1 == 0.0) break;
        sum0 += b * static_cast<double>(hist[b]);
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_bin = b;
        }
    }
    if (best_bin < 0) return std::nullopt;
    return lo + (best_bin + 1) / scale;
}

int median_of_window(const std::vector<int>& v, int center, int radius) {
    std::vector<int> window;
    window.reserve(2 * radius + 1);
    const int n = static_cast<int>(v.size());
    for (int i = center - radius; i <= center + radius; ++i)
        window.push_back(v[std::clamp(i, 0, n - 1)]);
    std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
    return window[window.size() / 2];
}

}  // namespace

SkyMask detect_skyline(const RadianceImage& img, const std::optional<SkyMask>& override_mask) {
    const int w = img.width();
    const int h = img.height();
    if (override_mask) {
        if (override_mask->width() != w || override_mask->height() != h)
            throw std::invalid_argument("sky mask dimensions do not match the image");
        return *override_mask;
    }
    if (h < 2) return SkyMask::all_sky(w, h);

    std::vector<int> skyline(w, h);
    for (int c = 0; c < w; ++c) {
        // Magnitude of the vertical luminance gradient between adjacent rows.
        std::vector<double> grad(h - 1);
        for (int r = 0; r + 1 < h; ++r)
            grad[r] = std::fabs(img.luminance(c, r + 1) - img.luminance(c, r));

        const auto thresh = otsu_threshold(grad);
        if (!thresh) continue;  // flat column: keep it all sky

        int boundary = h;  // default when nothing exceeds the threshold
        for (int r = 0; r + 1 < h; ++r) {
            if (grad[r] > *thresh) {
                boundary = r + 1;  // the transition row itself is not sky
                break;
            }
        }
        skyline[c] = boundary;
    }

    // Width-9 median across columns knocks out isolated misdetections.
    std::vector<int> smoothed(w);
    for (int c = 0; c < w; ++c) smoothed[c] = median_of_window(skyline, c, 4);
    return SkyMask(w, h, smoothed);
}

void save_sky_mask(const SkyMask& mask, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "column,row\n";
    for (int c = 0; c < mask.width(); ++c) out << c << "," << mask.skyline(c) << "\n";
    if (!out) throw std::runtime_error("sky mask write failed: " + path);
}

SkyMask load_sky_mask(const std::string& path, int width, int height) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sky mask: " + path);

    std::vector<int> skyline(width, -1);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find("column") != std::string::npos) continue;  // header
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed sky mask line: " + line);
        int col = 0, row = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, col);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), row);
        if (r1.ec != std::errc{} || r2.ec != std::errc{})
            throw std::runtime_error("malformed sky mask line: " + line);
        if (col < 0 || col >= width)
            throw std::runtime_error("sky mask column out of range: " + line);
        if (skyline[col] != -1)
            throw std::runtime_error("duplicate sky mask column: " + line);
        skyline[col] = row;
    }
    for (int c = 0; c < width; ++c)
        if (skyline[c] == -1)
            throw std::runtime_error("sky mask is missing column " + std::to_string(c));
    return SkyMask(width, height, skyline);
}

}  // namespace skyclear
