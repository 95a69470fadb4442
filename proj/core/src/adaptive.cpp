#include "skyclear/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "csv_detail.hpp"
#include "skyclear/baseline.hpp"
#include "skyclear/parallel.hpp"

namespace skyclear {

double alpha_from_elevation(double s, double beta, double L) {
    if (!(s >= 0.0))
        throw std::invalid_argument("alpha_from_elevation: elevation factor must be >= 0");
    const double denom = 1.0 + s;
    if (std::isinf(L)) return 1.0 / denom;
    if (L <= 0.0) return 0.0;
    return -std::expm1(-beta * denom * L) / denom;
}

ChannelTriple alpha_factor(const CameraGeometry& geom, const Atmosphere& atm, double x, double y,
                           double L) {
    const double s = geom.elevation(x, y);
    ChannelTriple a;
    for (int ch = 0; ch < kChannels; ++ch) a[ch] = alpha_from_elevation(s, atm.beta[ch], L);
    return a;
}

std::vector<double> quasi_quartile(const std::vector<double>& signal, int window) {
    const int n = static_cast<int>(signal.size());
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("quasi_quartile: window must be odd and >= 3");
    if (n < window) throw std::invalid_argument("quasi_quartile: signal shorter than window");

    const int r = window / 2;
    std::vector<double> out(n);
    std::vector<double> buf(window);
    for (int i = 0; i < n; ++i) {
        double mn = std::numeric_limits<double>::infinity();
        for (int k = -r; k <= r; ++k) {
            const double v = signal[std::clamp(i + k, 0, n - 1)];  // replicated edges
            buf[k + r] = v;
            mn = std::min(mn, v);
        }
        std::nth_element(buf.begin(), buf.begin() + r, buf.end());
        out[i] = 0.5 * (mn + buf[r]);
    }
    return out;
}

void CalibrationSet::validate(int input_width, int input_height) const {
    if (calib.width() != input_width)
        throw std::invalid_argument("CalibrationSet: calibration not resampled to input width");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("CalibrationSet: window must be odd and >= 3");
    if (input_width < window)
        throw std::invalid_argument("CalibrationSet: image narrower than the filter window");
    if (input_rows.empty() || input_rows.size() != calib_rows.size())
        throw std::invalid_argument("CalibrationSet: row sets must be nonempty and paired");
    for (int r : input_rows)
        if (r < 0 || r >= input_height)
            throw std::invalid_argument("CalibrationSet: input row out of range");
    for (int r : calib_rows)
        if (r < 0 || r >= calib.height())
            throw std::invalid_argument("CalibrationSet: calibration row out of range");
    if (!(calib_exposure > 0.0))
        throw std::invalid_argument("CalibrationSet: calib_exposure must be > 0");
}

std::vector<double> default_row_fractions() { return {0.1, 0.2, 0.3, 0.4, 0.5}; }

namespace {

RadianceImage resample_width(const RadianceImage& src, int new_width) {
    if (src.width() == new_width) return src;
    RadianceImage out(new_width, src.height());
    const double scale =
        new_width > 1 ? static_cast<double>(src.width() - 1) / (new_width - 1) : 0.0;
    for (int ch = 0; ch < kChannels; ++ch) {
        for (int r = 0; r < src.height(); ++r) {
            const double* in_row = src.row(ch, r);
            double* out_row = out.row(ch, r);
            for (int c = 0; c < new_width; ++c) {
                const double u = c * scale;
                const int i0 = std::min(static_cast<int>(u), src.width() - 1);
                const int i1 = std::min(i0 + 1, src.width() - 1);
                const double t = u - i0;
                out_row[c] = (1.0 - t) * in_row[i0] + t * in_row[i1];
            }
        }
    }
    return out;
}

// Gaussian smoothing with odd reflection at the ends, v(-k) = 2v(0) - v(k):
// the extension of a linear ramp stays linear, so ramps pass through
// unchanged while noise is averaged down.
std::vector<double> gaussian_smooth(const std::vector<double>& v, double sigma) {
    const int n = static_cast<int>(v.size());
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> weights(radius + 1);
    double norm = 0.0;
    for (int k = 0; k <= radius; ++k) {
        weights[k] = std::exp(-0.5 * (k * k) / (sigma * sigma));
        norm += k == 0 ? weights[k] : 2.0 * weights[k];
    }
    for (double& w : weights) w /= norm;

    auto sample = [&](int i) {
        if (i < 0) return 2.0 * v[0] - v[std::min(-i, n - 1)];
        if (i >= n) return 2.0 * v[n - 1] - v[std::max(n - 1 - (i - (n - 1)), 0)];
        return v[i];
    };
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double acc = weights[0] * v[i];
        for (int k = 1; k <= radius; ++k) acc += weights[k] * (sample(i - k) + sample(i + k));
        out[i] = acc;
    }
    return out;
}

}  // namespace

CalibrationSet align_calibration(const RadianceImage& input, const SkyMask& input_sky,
                                 const RadianceImage& calib, const SkyMask& calib_sky,
                                 const std::vector<double>& row_fractions, int window,
                                 double calib_exposure) {
    if (input_sky.width() != input.width() || input_sky.height() != input.height())
        throw std::invalid_argument("align_calibration: input mask dimensions differ from image");
    if (calib_sky.width() != calib.width() || calib_sky.height() != calib.height())
        throw std::invalid_argument("align_calibration: calibration mask dimensions differ");
    const int sky_in = input_sky.min_sky_height();
    const int sky_cal = calib_sky.min_sky_height();
    if (sky_in < 1 || sky_cal < 1)
        throw std::invalid_argument("align_calibration: empty sky region");
    if (row_fractions.empty())
        throw std::invalid_argument("align_calibration: row fraction set must be nonempty");

    CalibrationSet cs;
    cs.window = window;
    cs.calib_exposure = calib_exposure;
    for (double f : row_fractions) {
        if (!(f >= 0.0) || f >= 1.0)
            throw std::invalid_argument("align_calibration: row fractions must lie in [0, 1)");
        // Equal fractions of the common sky height correspond; row 0 pairs
        // with row 0 and the deepest sky row with the deepest sky row.
        const int ri = static_cast<int>(std::lround(f * (sky_in - 1)));
        const int rc = sky_in > 1
                           ? static_cast<int>(std::lround(
                                 static_cast<double>(ri) * (sky_cal - 1) / (sky_in - 1)))
                           : 0;
        cs.input_rows.push_back(ri);
        cs.calib_rows.push_back(rc);
    }
    cs.calib = resample_width(calib, input.width());
    cs.validate(input.width(), input.height());
    return cs;
}

GroundLightProfile estimate_light_profile(const RadianceImage& polluted, const CalibrationSet& cal,
                                          const CameraGeometry& geom, const Atmosphere& atm,
                                          double profile_sigma) {
    if (polluted.width() != geom.width() || polluted.height() != geom.height())
        throw std::invalid_argument("estimate_light_profile: image does not match camera frame");
    cal.validate(polluted.width(), polluted.height());

    const int w = polluted.width();
    const std::size_t rows = cal.input_rows.size();
    GroundLightProfile profile(w);
    for (int ch = 0; ch < kChannels; ++ch) {
        std::vector<double> acc(w, 0.0);
        for (std::size_t j = 0; j < rows; ++j) {
            const int ri = cal.input_rows[j];
            const int rc = cal.calib_rows[j];
            std::vector<double> in_row(polluted.row(ch, ri), polluted.row(ch, ri) + w);
            std::vector<double> cal_row(cal.calib.row(ch, rc), cal.calib.row(ch, rc) + w);
            const std::vector<double> in_f = quasi_quartile(in_row, cal.window);
            const std::vector<double> cal_f = quasi_quartile(cal_row, cal.window);
            const double y = geom.y_of(ri);
            for (int c = 0; c < w; ++c) {
                const double diff = in_f[c] - cal.calib_exposure * cal_f[c];
                if (diff <= 0.0) continue;  // pollution radiance cannot be negative
                const double alpha =
                    alpha_from_elevation(geom.elevation(geom.x_of(c), y), atm.beta[ch],
                                         kInfiniteDepth);
                acc[c] += diff / alpha;
            }
        }
        for (double& v : acc) v /= static_cast<double>(rows);
        if (profile_sigma > 0.0) acc = gaussian_smooth(acc, profile_sigma);
        for (int c = 0; c < w; ++c) profile.at(ch, c) = std::max(acc[c], 0.0);
    }
    return profile;
}

RadianceImage pollution_image_adaptive(const GroundLightProfile& profile,
                                       const CameraGeometry& geom, const Atmosphere& atm,
                                       const DepthMap& depth) {
    const int w = geom.width();
    const int h = geom.height();
    if (profile.width() != w)
        throw std::invalid_argument("pollution_image_adaptive: profile length must equal width");
    if (depth.width() != w || depth.height() != h)
        throw std::invalid_argument("pollution_image_adaptive: depth dimensions must match");

    RadianceImage out(w, h);
    parallel_for(h, [&](int r) {
        const double y = geom.y_of(r);
        for (int c = 0; c < w; ++c) {
            const double s = geom.elevation(geom.x_of(c), y);
            const double L = depth.at(c, r);
            for (int ch = 0; ch < kChannels; ++ch)
                out.at(ch, c, r) = profile.at(ch, c) * alpha_from_elevation(s, atm.beta[ch], L);
        }
    });
    return out;
}

RestoreResult restore_with_profile(const RadianceImage& polluted,
                                   const GroundLightProfile& profile, const CameraGeometry& geom,
                                   const Atmosphere& atm, const DepthMap& depth) {
    if (polluted.width() != geom.width() || polluted.height() != geom.height())
        throw std::invalid_argument("restore_with_profile: image does not match camera frame");
    return subtract_veil(polluted, pollution_image_adaptive(profile, geom, atm, depth));
}

RestoreResult restore_adaptive(const RadianceImage& polluted, const CalibrationSet& cal,
                               const CameraGeometry& geom, const Atmosphere& atm,
                               const DepthMap& depth, double profile_sigma) {
    const GroundLightProfile profile =
        estimate_light_profile(polluted, cal, geom, atm, profile_sigma);
    return restore_with_profile(polluted, profile, geom, atm, depth);
}

void save_light_profile(const GroundLightProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "x,A_R,A_G,A_B\n";
    std::string line;
    for (int c = 0; c < profile.width(); ++c) {
        line.clear();
        line += std::to_string(c);
        for (int ch = 0; ch < kChannels; ++ch) {
            line += ',';
            detail::append_double(line, profile.at(ch, c));
        }
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error("light profile write failed: " + path);
}

GroundLightProfile load_light_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open light profile: " + path);

    std::array<std::vector<double>, 3> channels;
    std::string line;
    bool first = true;
    int expected_col = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("x,", 0) == 0) continue;  // header
        }
        std::array<std::string_view, 4> fields;
        std::string_view rest = line;
        for (int i = 0; i < 4; ++i) {
            const auto comma = rest.find(',');
            if (i < 3) {
                if (comma == std::string_view::npos)
                    throw std::runtime_error("malformed light profile line: " + line);
                fields[i] = rest.substr(0, comma);
                rest.remove_prefix(comma + 1);
            } else {
                if (comma != std::string_view::npos)
                    throw std::runtime_error("malformed light profile line: " + line);
                fields[i] = rest;
            }
        }
        if (detail::parse_int(fields[0]) != expected_col)
            throw std::runtime_error("light profile columns must be 0..n-1 in order: " + line);
        ++expected_col;
        for (int ch = 0; ch < kChannels; ++ch)
            channels[ch].push_back(detail::parse_double(fields[ch + 1]));
    }
    if (channels[0].empty()) throw std::runtime_error("empty light profile: " + path);
    return GroundLightProfile(std::move(channels));
}

}  // namespace skyclear
