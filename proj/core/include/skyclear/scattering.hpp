#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "skyclear/types.hpp"

namespace skyclear {

/// Altitudes below this are clamped before evaluating the altitude
/// irradiance: the disk integral diverges logarithmically at ground level.
constexpr double kAltitudeFloorMeters = 1.0;

/// Bouguer attenuation: e0 * exp(-beta * d).
double attenuate(double e0, double beta, double d);

/// Isotropic point source at distance d: e0 * exp(-beta * d) / d^2.
double point_source_irradiance(double e0, double beta, double d);

// Exponential integral
//
//          inf
//           /      -t
//          |      e
// E (u) =  |  dt ----- ,   u > 0.
//  1       |       t
//         /
//          u
//
// Power series below u = 1, modified-Lentz continued fraction above.
// Relative error is a few ulps over the whole supported range.
double exp_integral_e1(double u);

/// Irradiance of ground lights of uniform radiance `a` at altitude y meters:
/// 2*pi*a*E1(beta*y). Strictly decreasing in y and in beta.
/// Throws std::domain_error for y below kAltitudeFloorMeters.
double irradiance_at_altitude(double a, double beta, double y);
ChannelTriple irradiance_at_altitude(const ChannelTriple& a, const Atmosphere& atm, double y);

/// Same quantity evaluated as an adaptive quadrature of the ground-disk
/// integral over the horizontal offset, without the change of variable that
/// yields the E1 form. Kept as an independent cross-check of the closed form.
double irradiance_at_altitude_quadrature(double a, double beta, double y,
                                         double quad_rel_tol = 1e-8,
                                         double tau_max_factor = 15.0);
ChannelTriple irradiance_at_altitude_quadrature(const ChannelTriple& a, const Atmosphere& atm,
                                                double y);

/// Sampled altitude-irradiance curve. Altitudes strictly increasing;
/// values nonnegative and strictly decreasing per channel (ties allowed
/// only at zero amplitude).
struct IrradianceCurve {
    std::vector<double> altitudes;
    std::array<std::vector<double>, 3> values;

    IrradianceCurve(std::vector<double> altitudes_, std::array<std::vector<double>, 3> values_);
    int size() const { return static_cast<int>(altitudes.size()); }
};

/// n log-spaced samples of the altitude irradiance over [y_min, y_max].
IrradianceCurve emit_irradiance_curve(const ChannelTriple& a, const Atmosphere& atm,
                                      double y_min, double y_max, int n);

/// CSV with header "altitude_m,E_R,E_G,E_B"; values printed with shortest
/// round-trip precision.
void curve_to_csv(const IrradianceCurve& curve, std::ostream& out);
void save_curve_csv(const IrradianceCurve& curve, const std::string& path);

}  // namespace skyclear
