#pragma once

#include <string>

#include "skyclear/adaptive.hpp"
#include "skyclear/types.hpp"

namespace skyclear {

struct GuidedFilterParams {
    int radius = 16;         ///< box window half-size, pixels
    double epsilon = 1e-3;   ///< variance regularizer on [0,1] luminance
    double depth_scale = 1.0;  ///< meters per depth-map unit

    void validate() const;
};

/// Reads a depth raster (.pfm single-channel, or gray 8/16-bit .png whose
/// integer sample values are depths in map units), scales values to meters
/// and forces every sky-mask pixel to kInfiniteDepth. Finite depths must end
/// up > 0.
DepthMap load_depth(const std::string& path, double scale, const SkyMask& sky);

/// Writes a depth map as a single-channel .pfm (infinities preserved).
void save_depth(const DepthMap& depth, const std::string& path);

/// Edge-guided smoothing of a depth map, guide = image luminance. Standard
/// two-pass guided filter except that infinite (sky) entries are excluded
/// from every window statistic and pass through unchanged, so sky never
/// bleeds into building-edge depth. Finite outputs are floored at 1 mm.
DepthMap guided_filter(const RadianceImage& guide, const DepthMap& target,
                       const GuidedFilterParams& p);

/// Below-skyline restoration: guided-filter the depth, then run the adaptive
/// restoration with the per-pixel path lengths. With an all-infinite depth
/// map this reduces exactly to restore_adaptive.
RestoreResult restore_city(const RadianceImage& polluted, const CalibrationSet& cal,
                           const CameraGeometry& geom, const Atmosphere& atm,
                           const DepthMap& depth_raw, const GuidedFilterParams& gf);

}  // namespace skyclear
