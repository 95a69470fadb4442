#include "skyclear/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skyclear/parallel.hpp"
#include "skyclear/quadrature.hpp"
#include "skyclear/scattering.hpp"

namespace skyclear {

BaselineParams::BaselineParams(const ChannelTriple& a_const_, const Atmosphere& atm_,
                               const CameraGeometry& geom_, double meters_per_unit_)
    : a_const(a_const_), atm(atm_), geom(geom_), meters_per_unit(meters_per_unit_) {
    for (double a : a_const)
        if (!std::isfinite(a) || a < 0.0)
            throw std::invalid_argument("BaselineParams: a_const must be finite and >= 0");
    if (!(meters_per_unit > 0.0))
        throw std::invalid_argument("BaselineParams: meters_per_unit must be > 0");
}

double altitude_along_ray(const CameraGeometry& geom, double x, double y, double tau) {
    if (tau < 0.0) throw std::invalid_argument("altitude_along_ray: tau must be >= 0");
    return tau * geom.elevation(x, y);
}

double pollution_along_ray(double a, double beta, double s, double L, double quad_rel_tol) {
    if (a == 0.0 || L <= 0.0) return 0.0;
    const double e_floor = irradiance_at_altitude(a, beta, kAltitudeFloorMeters);
    if (s <= 0.0) {
        // Horizontal ray: the altitude never leaves the clamp region.
        return e_floor * -std::expm1(-beta * L);
    }
    // Below tau0 the altitude argument sits on the clamp, so that head of the
    // path integrates in closed form.
    const double tau0 = kAltitudeFloorMeters / s;
    double j = e_floor * -std::expm1(-beta * std::min(tau0, L));
    if (L > tau0) {
        auto integrand = [&](double tau) {
            const double alt = std::max(tau * s, kAltitudeFloorMeters);
            return irradiance_at_altitude(a, beta, alt) * beta * std::exp(-beta * tau);
        };
        j += integrate_adaptive_geometric(integrand, tau0, L, tau0, quad_rel_tol);
    }
    return j;
}

RadianceImage pollution_image_baseline(const BaselineParams& p, const DepthMap& depth) {
    const CameraGeometry& geom = p.geom;
    const int w = geom.width();
    const int h = geom.height();
    if (depth.width() != w || depth.height() != h)
        throw std::invalid_argument(
            "pollution_image_baseline: depth dimensions must match the camera frame");

    RadianceImage out(w, h);
    parallel_for(h, [&](int r) {
        const double y = geom.y_of(r);
        const int half = (w + 1) / 2;
        for (int c = 0; c < half; ++c) {
            // The mirror column sees the same |x|, hence the same elevation
            // factor; equal depths let us reuse the integral bit for bit.
            const double s = geom.elevation(geom.x_of(c), y);
            const double d = depth.at(c, r);
            ChannelTriple j{};
            for (int ch = 0; ch < kChannels; ++ch) {
                const double cap = p.atm.path_cap(ch);
                const double len =
                    std::isfinite(d) ? std::min(d * p.meters_per_unit, cap) : cap;
                j[ch] = pollution_along_ray(p.a_const[ch], p.atm.beta[ch], s, len,
                                            p.atm.quad_rel_tol);
                out.at(ch, c, r) = j[ch];
            }
            const int cm = w - 1 - c;
            if (cm == c) continue;
            const double dm = depth.at(cm, r);
            if (dm == d) {
                for (int ch = 0; ch < kChannels; ++ch) out.at(ch, cm, r) = j[ch];
            } else {
                for (int ch = 0; ch < kChannels; ++ch) {
                    const double cap = p.atm.path_cap(ch);
                    const double len =
                        std::isfinite(dm) ? std::min(dm * p.meters_per_unit, cap) : cap;
                    out.at(ch, cm, r) = pollution_along_ray(p.a_const[ch], p.atm.beta[ch], s,
                                                            len, p.atm.quad_rel_tol);
                }
            }
        }
    });
    return out;
}

RestoreResult subtract_veil(const RadianceImage& polluted, const RadianceImage& veil) {
    if (!polluted.same_size(veil))
        throw std::invalid_argument("subtract_veil: image dimensions differ");
    RestoreResult res{RadianceImage(polluted.width(), polluted.height()), 0.0};
    const auto& in = polluted.data();
    const auto& j = veil.data();
    auto& out = res.image.data();
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double v = in[i] - j[i];
        if (v < 0.0) {
            out[i] = 0.0;
            ++clamped;
        } else {
            out[i] = v;
        }
    }
    res.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(in.size());
    return res;
}

RestoreResult restore_baseline(const RadianceImage& polluted, const BaselineParams& p,
                               const DepthMap& depth) {
    if (polluted.width() != p.geom.width() || polluted.height() != p.geom.height())
        throw std::invalid_argument("restore_baseline: image dimensions must match the camera frame");
    return subtract_veil(polluted, pollution_image_baseline(p, depth));
}

}  // namespace skyclear
