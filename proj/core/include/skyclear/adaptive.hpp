#pragma once

#include <string>
#include <vector>

#include "skyclear/types.hpp"

namespace skyclear {

/// Accumulated scattering weight of one ray, closed form:
///
///   alpha(s, beta, L) = (1 - exp(-beta*(1+s)*L)) / (1+s)
///
/// For L = kInfiniteDepth this is 1/(1+s), independent of beta. Lies in
/// [0, 1], increasing in L, decreasing in s; 0 only at L = 0.
double alpha_from_elevation(double s, double beta, double L);

/// Per-channel alpha at pixel coordinates (x, y) for path length L meters.
ChannelTriple alpha_factor(const CameraGeometry& geom, const Atmosphere& atm, double x, double y,
                           double L);

/// Quasi-quartile of a 1-D signal: pointwise mean of the windowed minimum
/// and the windowed median, edges replicated. Suppresses star-like impulses
/// narrower than half the window while tracking the sky background.
std::vector<double> quasi_quartile(const std::vector<double>& signal, int window);

/// A pristine calibration sky aligned to the input frame: the calibration
/// image resampled to the input width, plus the paired row sets used for
/// light-profile estimation.
struct CalibrationSet {
    RadianceImage calib;          ///< resampled to the input width
    std::vector<int> input_rows;  ///< sample rows in the input image (sky everywhere)
    std::vector<int> calib_rows;  ///< matching rows in `calib`
    int window = 31;              ///< quasi-quartile width, odd >= 3
    double calib_exposure = 1.0;  ///< scale matching calibration exposure to the input

    void validate(int input_width, int input_height) const;
};

/// Default sample-row placement: fractions of the sky height measured from
/// the top of the frame.
std::vector<double> default_row_fractions();

/// Pairs sky rows of the input with rows at the same fraction of sky height
/// in the calibration image and resamples the calibration image horizontally
/// (linear) to the input width. Row fractions are measured from the top of
/// the frame within the common (minimum over columns) sky height.
CalibrationSet align_calibration(const RadianceImage& input, const SkyMask& input_sky,
                                 const RadianceImage& calib, const SkyMask& calib_sky,
                                 const std::vector<double>& row_fractions = default_row_fractions(),
                                 int window = 31, double calib_exposure = 1.0);

/// Least-squares ground-light profile. Per channel and column, A(x) is the
/// mean over sample rows of
///
///   max(0, filtered_input - calib_exposure * filtered_calib) / alpha(x, y_j, infinity)
///
/// where both rows pass through the quasi-quartile filter first. The raw
/// profile is then smoothed along x with a Gaussian of width profile_sigma
/// (0 disables smoothing).
GroundLightProfile estimate_light_profile(const RadianceImage& polluted, const CalibrationSet& cal,
                                          const CameraGeometry& geom, const Atmosphere& atm,
                                          double profile_sigma = 15.0);

/// J(x, y) = A(x) * alpha(x, y, L(x, y)); sky pixels use the infinite-path
/// closed form via the depth map's infinities.
RadianceImage pollution_image_adaptive(const GroundLightProfile& profile,
                                       const CameraGeometry& geom, const Atmosphere& atm,
                                       const DepthMap& depth);

/// clamp(polluted - A*alpha, 0) for a known profile.
RestoreResult restore_with_profile(const RadianceImage& polluted,
                                   const GroundLightProfile& profile, const CameraGeometry& geom,
                                   const Atmosphere& atm, const DepthMap& depth);

/// Full adaptive pipeline: estimate_light_profile, then restore_with_profile.
RestoreResult restore_adaptive(const RadianceImage& polluted, const CalibrationSet& cal,
                               const CameraGeometry& geom, const Atmosphere& atm,
                               const DepthMap& depth, double profile_sigma = 15.0);

/// CSV round trip for ground-light profiles. Header "x,A_R,A_G,A_B"; values
/// printed with shortest round-trip precision so save/load is bit-exact.
void save_light_profile(const GroundLightProfile& profile, const std::string& path);
GroundLightProfile load_light_profile(const std::string& path);

}  // namespace skyclear
