#pragma once

// Internal raw PNG/PFM raster access shared by image and depth loaders.
// Not installed.

#include <cstdint>
#include <string>
#include <vector>

namespace skyclear::detail {

struct RawPng {
    int width = 0;
    int height = 0;
    int channels = 0;   // 1 (gray) or 3 (rgb)
    int bit_depth = 0;  // 8 or 16
    std::vector<std::uint16_t> samples;  // interleaved, row-major, top-down
};

RawPng read_png(const std::string& path);
void write_png(const std::string& path, int width, int height, int channels, int bit_depth,
               const std::vector<std::uint16_t>& samples);

struct RawPfm {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 ("Pf") or 3 ("PF")
    std::vector<float> samples;  // interleaved, row-major, top-down
};

RawPfm read_pfm(const std::string& path);
void write_pfm(const std::string& path, int width, int height, int channels,
               const std::vector<float>& samples);

bool has_suffix(const std::string& path, const std::string& suffix);

}  // namespace skyclear::detail
