#include "skyclear/scattering.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "csv_detail.hpp"
#include "skyclear/quadrature.hpp"

namespace skyclear {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;

using detail::append_double;
}  // namespace

double attenuate(double e0, double beta, double d) {
    if (e0 < 0.0 || beta <= 0.0 || d < 0.0)
        throw std::domain_error("attenuate: requires e0 >= 0, beta > 0, d >= 0");
    return e0 * std::exp(-beta * d);
}

double point_source_irradiance(double e0, double beta, double d) {
    if (e0 < 0.0 || beta <= 0.0)
        throw std::domain_error("point_source_irradiance: requires e0 >= 0, beta > 0");
    if (!(d > 0.0))
        throw std::domain_error("point_source_irradiance: singular at d = 0");
    return e0 * std::exp(-beta * d) / (d * d);
}

double exp_integral_e1(double u) {
    if (!(u > 0.0))
        throw std::domain_error("exp_integral_e1: argument must be > 0");

    if (u <= 1.0) {
        // E1(u) = -gamma - ln u + sum_{n>=1} (-1)^{n+1} u^n / (n * n!)
        double sum = 0.0;
        double power = 1.0;   // u^n
        double factorial = 1.0;  // n!
        double sign = 1.0;
        for (int n = 1; n <= 40; ++n) {
            power *= u;
            factorial *= n;
            const double term = sign * power / (n * factorial);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-18) break;
            sign = -sign;
        }
        return -kEulerGamma - std::log(u) + sum;
    }

    // Continued fraction e^{-u} / (u + 1 - 1/(u + 3 - 4/(u + 5 - ...))),
    // evaluated with the modified Lentz algorithm.
    const double tiny = 1e-300;
    double b = u + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 300; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-u);
}

double irradiance_at_altitude(double a, double beta, double y) {
    if (a < 0.0)
        throw std::domain_error("irradiance_at_altitude: radiance must be >= 0");
    if (y < kAltitudeFloorMeters)
        throw std::domain_error("irradiance_at_altitude: altitude below the 1 m floor");
    if (beta <= 0.0)
        throw std::domain_error("irradiance_at_altitude: beta must be > 0");
    return kTwoPi * exp_integral_e1(beta * y) * a;
}

ChannelTriple irradiance_at_altitude(const ChannelTriple& a, const Atmosphere& atm, double y) {
    ChannelTriple out;
    for (int c = 0; c < kChannels; ++c) out[c] = irradiance_at_altitude(a[c], atm.beta[c], y);
    return out;
}

double irradiance_at_altitude_quadrature(double a, double beta, double y,
                                         double quad_rel_tol, double tau_max_factor) {
    if (a < 0.0)
        throw std::domain_error("irradiance_at_altitude_quadrature: radiance must be >= 0");
    if (y < kAltitudeFloorMeters)
        throw std::domain_error("irradiance_at_altitude_quadrature: altitude below the 1 m floor");
    if (beta <= 0.0)
        throw std::domain_error("irradiance_at_altitude_quadrature: beta must be > 0");
    if (a == 0.0) return 0.0;

    // Integrand over the horizontal ground offset x, slant range
    // l = sqrt(x^2 + y^2):  a e^{-beta l} / l^2 * 2 pi x.
    const auto integrand = [beta, y](double x) {
        const double l2 = x * x + y * y;
        return std::exp(-beta * std::sqrt(l2)) / l2 * kTwoPi * x;
    };
    // Truncate where the exponential has decayed by e^{-tau_max_factor}
    // relative to the slant range at x = 0.
    const double l_max = y + tau_max_factor / beta;
    const double x_max = std::sqrt(l_max * l_max - y * y);
    return a * integrate_adaptive_geometric(integrand, 0.0, x_max, y, quad_rel_tol);
}

ChannelTriple irradiance_at_altitude_quadrature(const ChannelTriple& a, const Atmosphere& atm,
                                                double y) {
    ChannelTriple out;
    for (int c = 0; c < kChannels; ++c)
        out[c] = irradiance_at_altitude_quadrature(a[c], atm.beta[c], y, atm.quad_rel_tol,
                                                   atm.tau_max_factor);
    return out;
}

IrradianceCurve::IrradianceCurve(std::vector<double> altitudes_,
                                 std::array<std::vector<double>, 3> values_)
    : altitudes(std::move(altitudes_)), values(std::move(values_)) {
    const std::size_t n = altitudes.size();
    if (n < 2) throw std::invalid_argument("IrradianceCurve: needs at least 2 samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(altitudes[i] > 0.0))
            throw std::invalid_argument("IrradianceCurve: altitudes must be > 0");
        if (i > 0 && !(altitudes[i] > altitudes[i - 1]))
            throw std::invalid_argument("IrradianceCurve: altitudes must be strictly increasing");
    }
    for (const auto& chan : values) {
        if (chan.size() != n)
            throw std::invalid_argument("IrradianceCurve: value/altitude length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (!(chan[i] >= 0.0))
                throw std::invalid_argument("IrradianceCurve: values must be >= 0");
            if (i > 0 && !(chan[i] < chan[i - 1]) && !(chan[i] == 0.0 && chan[i - 1] == 0.0))
                throw std::invalid_argument("IrradianceCurve: values must decrease with altitude");
        }
    }
}

IrradianceCurve emit_irradiance_curve(const ChannelTriple& a, const Atmosphere& atm,
                                      double y_min, double y_max, int n) {
    if (!(y_min > 0.0) || !(y_max > y_min))
        throw std::domain_error("emit_irradiance_curve: requires 0 < y_min < y_max");
    if (n < 2) throw std::domain_error("emit_irradiance_curve: requires n >= 2");

    std::vector<double> alt(n);
    const double ratio = y_max / y_min;
    for (int i = 0; i < n; ++i)
        alt[i] = i == n - 1 ? y_max : y_min * std::pow(ratio, static_cast<double>(i) / (n - 1));

    std::array<std::vector<double>, 3> vals;
    for (auto& v : vals) v.resize(n);
    for (int i = 0; i < n; ++i) {
        const ChannelTriple e = irradiance_at_altitude(a, atm, alt[i]);
        for (int c = 0; c < kChannels; ++c) vals[c][i] = e[c];
    }
    return IrradianceCurve(std::move(alt), std::move(vals));
}

void curve_to_csv(const IrradianceCurve& curve, std::ostream& out) {
    out << "altitude_m,E_R,E_G,E_B\n";
    std::string line;
    for (int i = 0; i < curve.size(); ++i) {
        line.clear();
        append_double(line, curve.altitudes[i]);
        for (int c = 0; c < kChannels; ++c) {
            line.push_back(',');
            append_double(line, curve.values[c][i]);
        }
        line.push_back('\n');
        out << line;
    }
}

void save_curve_csv(const IrradianceCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    curve_to_csv(curve, out);
}

}  // namespace skyclear
