#pragma once

#include <cstdint>
#include <vector>

#include "skyclear/types.hpp"

namespace skyclear {

/// Gaussian star PSF composited additively onto the base sky.
struct Star {
    double x = 0.0;        ///< column, pixels
    double y = 0.0;        ///< row, pixels
    double amplitude = 0;  ///< peak linear radiance added to every channel
    double sigma = 1.0;    ///< PSF width, pixels
};

enum class SimMode { Baseline, Adaptive };

/// Ground truth plus atmosphere: everything needed to run the image model
/// forward and produce a synthetic polluted frame.
struct SimScene {
    RadianceImage base;          ///< pristine radiance before stars and veil
    GroundLightProfile profile;  ///< per-column ground lights (adaptive mode)
    ChannelTriple a_const{0.0, 0.0, 0.0};  ///< uniform ground radiance (baseline mode)
    Atmosphere atm;
    CameraGeometry geom;
    DepthMap depth;
    std::vector<Star> stars;
    double noise_sigma = 0.0;  ///< additive Gaussian sensor noise, linear units
    std::uint64_t noise_seed = 0;

    SimScene(RadianceImage base_, CameraGeometry geom_);
};

/// Adds each star's truncated Gaussian PSF to the image.
void composite_stars(RadianceImage& img, const std::vector<Star>& stars);

/// Polluted frame: stars composited onto the base, the selected forward
/// model's veil added, optional sensor noise applied, clamped at zero.
/// With noise_sigma = 0 the result is exactly base + stars + veil.
RadianceImage synthesize(const SimScene& scene, SimMode mode);

/// The star list make_synthetic_sky places for a given seed: positions
/// uniform inside an 8 px margin with a 12 px minimum separation,
/// amplitudes in [0.2, 0.8], PSF sigma in [0.8, 1.8]. Deterministic.
std::vector<Star> synthetic_star_field(int width, int height, int stars, std::uint64_t seed);

/// Pristine test sky: vertical gradient from `top` (row 0) to `bottom`
/// (last row) plus `stars` seeded Gaussian stars.
RadianceImage make_synthetic_sky(int width, int height, const ChannelTriple& top,
                                 const ChannelTriple& bottom, int stars, std::uint64_t seed);

/// Seeded Gaussian noise field (mean 0, deviation sigma), consumed in raster
/// order; identical bits for identical arguments on every platform.
std::vector<double> gaussian_noise_field(std::size_t count, double sigma, std::uint64_t seed);

}  // namespace skyclear
