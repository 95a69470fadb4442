#pragma once

#include <optional>
#include <string>

#include "skyclear/types.hpp"

namespace skyclear {

// Estimate, for every column, the row index where the sky ends.  Rows above
// the returned skyline (row < skyline[col]) are treated as sky.  The detector
// thresholds the per-column vertical luminance gradient with Otsu's method and
// smooths the resulting boundary with a width-9 median across columns.  When a
// column shows no usable gradient contrast the whole column is taken as sky.
//
// If `override_mask` is supplied it is validated against the image dimensions
// and returned unchanged; no detection runs.
SkyMask detect_skyline(const RadianceImage& img,
                       const std::optional<SkyMask>& override_mask = std::nullopt);

// CSV round trip for sky masks.  One line per column: "column,row" where `row`
// is the skyline index for that column.  `load_sky_mask` accepts files with or
// without the header line and requires every column in [0, width) exactly once.
void save_sky_mask(const SkyMask& mask, const std::string& path);
SkyMask load_sky_mask(const std::string& path, int width, int height);

}  // namespace skyclear
