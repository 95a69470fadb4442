#pragma once

#include <string>

#include "skyclear/types.hpp"

namespace skyclear {

/// Electro-optical transfer applied while decoding/encoding image files.
/// Linear passes samples through; Srgb applies the standard sRGB curves.
enum class Transfer { Linear, Srgb };

/// sRGB decode (encoded [0,1] -> linear) and encode (linear -> [0,1]).
double srgb_to_linear(double v);
double linear_to_srgb(double v);

/// Loads an 8/16-bit RGB PNG or a 3-channel float PFM into linear radiance.
/// PNG samples are decoded through `transfer`; PFM files are always linear
/// and ignore it. Throws std::runtime_error on unreadable or unsupported
/// files (wrong channel count, palette/gray PNG, bad bit depth).
RadianceImage load_image(const std::string& path, Transfer transfer = Transfer::Srgb);

/// Saves as PNG (path ending .png; bit depth 8 or 16) or PFM (.pfm, float,
/// little endian). PNG output clamps to [0,1] after encoding through
/// `transfer`; PFM stores linear values unclamped.
void save_image(const RadianceImage& img, const std::string& path,
                Transfer transfer = Transfer::Srgb, int png_bits = 16);

}  // namespace skyclear
