#pragma once

#include "skyclear/types.hpp"

namespace skyclear {

/// Parameters of the uniform-ground-radiance restoration: every point on the
/// ground plane emits the same per-channel radiance a_const.
struct BaselineParams {
    ChannelTriple a_const;
    Atmosphere atm;
    CameraGeometry geom;
    /// Scale applied to depth-map values to express the path length in the
    /// same meters the scattering coefficient uses. Default 1 (depth maps
    /// are already metric); exposed for unit sensitivity studies.
    double meters_per_unit = 1.0;

    BaselineParams(const ChannelTriple& a_const_, const Atmosphere& atm_,
                   const CameraGeometry& geom_, double meters_per_unit_ = 1.0);
};

/// Altitude above ground reached after walking tau meters along the viewing
/// ray of pixel (x, y): tau * s(x, y) with s the elevation factor.
double altitude_along_ray(const CameraGeometry& geom, double x, double y, double tau);

/// Veil radiance accumulated along one ray of elevation factor s over path
/// length L meters, for ground radiance a and scattering coefficient beta.
/// The scalar kernel behind pollution_image_baseline.
double pollution_along_ray(double a, double beta, double s, double L,
                           double quad_rel_tol = 1e-8);

/// Pollution image of the uniform model. Per pixel and channel,
///
///   J = integral over tau in [0, L] of  E(tau * s) * beta * exp(-beta * tau)
///
/// with E the altitude irradiance of ground lights of radiance a_const and
/// L = min(depth * meters_per_unit, tau_max_factor / beta). The altitude
/// argument is clamped below at the irradiance floor; the clamped head of the
/// path integrates in closed form, the rest by adaptive quadrature.
/// Column-symmetric inputs produce bit-identical mirror columns.
RadianceImage pollution_image_baseline(const BaselineParams& p, const DepthMap& depth);

/// clamp(polluted - J, 0) with J from pollution_image_baseline.
RestoreResult restore_baseline(const RadianceImage& polluted, const BaselineParams& p,
                               const DepthMap& depth);

/// Shared by every restoration mode: subtract the veil and clamp at zero,
/// reporting the clamped sample fraction.
RestoreResult subtract_veil(const RadianceImage& polluted, const RadianceImage& veil);

}  // namespace skyclear
