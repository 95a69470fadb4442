#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace skyclear {

/// One value per color channel, R, G, B order.
using ChannelTriple = std::array<double, 3>;

constexpr int kChannels = 3;

/// Planar 3-channel raster of linear radiance. Display white is 1.0 but
/// values are unbounded above; all samples must be finite and >= 0.
class RadianceImage {
public:
    RadianceImage() = default;
    RadianceImage(int width, int height);
    RadianceImage(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }

    double& at(int channel, int col, int row) {
        return data_[plane_ * channel + static_cast<std::size_t>(row) * width_ + col];
    }
    double at(int channel, int col, int row) const {
        return data_[plane_ * channel + static_cast<std::size_t>(row) * width_ + col];
    }

    double* plane(int channel) { return data_.data() + plane_ * channel; }
    const double* plane(int channel) const { return data_.data() + plane_ * channel; }

    double* row(int channel, int r) { return plane(channel) + static_cast<std::size_t>(r) * width_; }
    const double* row(int channel, int r) const { return plane(channel) + static_cast<std::size_t>(r) * width_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_size(const RadianceImage& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    /// Throws std::invalid_argument if any sample is NaN, Inf or negative.
    void validate() const;

    /// Rec.709 luma of the linear channels.
    double luminance(int col, int row) const {
        return 0.2126 * at(0, col, row) + 0.7152 * at(1, col, row) + 0.0722 * at(2, col, row);
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::size_t plane_ = 0;
    std::vector<double> data_;
};

/// Perspective camera for the pollution path integral.
//
// Pixel coordinates are measured from the principal point at the image
// center: x rightward, y upward. For an image of H rows the half-height is
// h = (H-1)/2, so the bottom row sits exactly at y = -h (a horizontal ray,
// elevation factor 0) and the top row at y = +h.
class CameraGeometry {
public:
    CameraGeometry(double focal_px, int width, int height);

    double focal_px() const { return focal_px_; }
    double half_height_px() const { return half_height_; }
    int width() const { return width_; }
    int height() const { return height_; }

    double x_of(int col) const { return col - 0.5 * (width_ - 1); }
    double y_of(int row) const { return half_height_ - row; }

    /// Elevation factor s(x,y) = (y+h)/sqrt(f^2+x^2+y^2), in [0, sqrt(2)).
    double elevation(double x, double y) const;
    double elevation_at(int col, int row) const { return elevation(x_of(col), y_of(row)); }

private:
    double focal_px_;
    double half_height_;
    int width_;
    int height_;
};

/// Scattering medium: per-channel coefficient beta (1/m) plus the
/// quadrature controls shared by every path integral.
struct Atmosphere {
    ChannelTriple beta{1e-4, 1e-4, 1e-4};
    double quad_rel_tol = 1e-8;
    double tau_max_factor = 15.0;

    Atmosphere() = default;
    Atmosphere(ChannelTriple beta_, double quad_rel_tol_ = 1e-8, double tau_max_factor_ = 15.0);
    explicit Atmosphere(double beta_scalar, double quad_rel_tol_ = 1e-8, double tau_max_factor_ = 15.0);

    /// Path-length cap for "infinite" rays, per channel: tau_max_factor/beta.
    double path_cap(int channel) const { return tau_max_factor / beta[channel]; }

    // Presets for air purity.
    static Atmosphere aerosol_free() { return Atmosphere(2.8e-5); }
    static Atmosphere slight_haze() { return Atmosphere(1e-4); }
    static Atmosphere haze() { return Atmosphere(1e-3); }
};

/// Horizontal radiance profile A(x) of ground artificial lights, one value
/// per image column and channel.
class GroundLightProfile {
public:
    GroundLightProfile() = default;
    explicit GroundLightProfile(int width);
    GroundLightProfile(std::array<std::vector<double>, 3> values);

    int width() const { return static_cast<int>(values_[0].size()); }

    double& at(int channel, int col) { return values_[channel][col]; }
    double at(int channel, int col) const { return values_[channel][col]; }

    std::vector<double>& channel(int c) { return values_[c]; }
    const std::vector<double>& channel(int c) const { return values_[c]; }

    void validate() const;

private:
    std::array<std::vector<double>, 3> values_;
};

/// Output of a restoration pass: the pollution-free estimate plus the
/// fraction of channel samples that hit the zero clamp.
struct RestoreResult {
    RadianceImage image;
    double clamped_fraction = 0.0;
};

constexpr double kInfiniteDepth = std::numeric_limits<double>::infinity();

/// Per-pixel path length to the scene point, in meters. Sky pixels carry
/// kInfiniteDepth; every finite entry must be > 0.
class DepthMap {
public:
    DepthMap() = default;
    /// All-infinite map (pure sky).
    DepthMap(int width, int height);
    DepthMap(int width, int height, std::vector<double> meters);

    int width() const { return width_; }
    int height() const { return height_; }

    double& at(int col, int row) { return meters_[static_cast<std::size_t>(row) * width_ + col]; }
    double at(int col, int row) const { return meters_[static_cast<std::size_t>(row) * width_ + col]; }

    bool valid(int col, int row) const { return std::isfinite(at(col, row)); }

    std::vector<double>& data() { return meters_; }
    const std::vector<double>& data() const { return meters_; }

    void validate() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> meters_;
};

/// Per-column skyline: index of the first non-sky row from the top, in
/// [0, height]. Rows strictly above the index are sky.
class SkyMask {
public:
    SkyMask() = default;
    SkyMask(int width, int height, std::vector<int> skyline);
    static SkyMask all_sky(int width, int height);

    int width() const { return static_cast<int>(skyline_.size()); }
    int height() const { return height_; }

    int skyline(int col) const { return skyline_[col]; }
    bool is_sky(int col, int row) const { return row < skyline_[col]; }

    /// Smallest per-column sky height; rows [0, min_sky_height) are sky in
    /// every column.
    int min_sky_height() const;

    const std::vector<int>& skylines() const { return skyline_; }

private:
    int height_ = 0;
    std::vector<int> skyline_;
};

}  // namespace skyclear
