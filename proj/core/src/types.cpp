#include "skyclear/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace skyclear {

RadianceImage::RadianceImage(int width, int height)
    : width_(width), height_(height), plane_(static_cast<std::size_t>(width) * height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("RadianceImage: width and height must be >= 1");
    data_.assign(plane_ * kChannels, 0.0);
}

RadianceImage::RadianceImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), plane_(static_cast<std::size_t>(width) * height),
      data_(std::move(data)) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("RadianceImage: width and height must be >= 1");
    if (data_.size() != plane_ * kChannels)
        throw std::invalid_argument("RadianceImage: data length must be 3*width*height");
}

void RadianceImage::validate() const {
    for (double v : data_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("RadianceImage: samples must be finite and >= 0");
    }
}

CameraGeometry::CameraGeometry(double focal_px, int width, int height)
    : focal_px_(focal_px), half_height_(0.5 * (height - 1)), width_(width), height_(height) {
    if (!(focal_px > 0.0))
        throw std::invalid_argument("CameraGeometry: focal length must be > 0");
    if (width < 1 || height < 2)
        throw std::invalid_argument("CameraGeometry: image must be at least 1x2");
    // s < sqrt(2) everywhere in frame requires f > h (worst case is the top
    // center pixel).
    if (!(focal_px > half_height_))
        throw std::invalid_argument("CameraGeometry: focal length must exceed half the image height (" +
                                    std::to_string(half_height_) + " px)");
}

double CameraGeometry::elevation(double x, double y) const {
    return (y + half_height_) / std::sqrt(focal_px_ * focal_px_ + x * x + y * y);
}

Atmosphere::Atmosphere(ChannelTriple beta_, double quad_rel_tol_, double tau_max_factor_)
    : beta(beta_), quad_rel_tol(quad_rel_tol_), tau_max_factor(tau_max_factor_) {
    for (double b : beta) {
        if (!(b > 0.0) || b > 1.0)
            throw std::invalid_argument("Atmosphere: beta must lie in (0, 1] per channel");
    }
    if (!(quad_rel_tol > 0.0) || quad_rel_tol > 1e-3)
        throw std::invalid_argument("Atmosphere: quad_rel_tol must lie in (0, 1e-3]");
    if (!(tau_max_factor >= 10.0))
        throw std::invalid_argument("Atmosphere: tau_max_factor must be >= 10");
}

Atmosphere::Atmosphere(double beta_scalar, double quad_rel_tol_, double tau_max_factor_)
    : Atmosphere(ChannelTriple{beta_scalar, beta_scalar, beta_scalar}, quad_rel_tol_, tau_max_factor_) {}

GroundLightProfile::GroundLightProfile(int width) {
    if (width < 1)
        throw std::invalid_argument("GroundLightProfile: width must be >= 1");
    for (auto& v : values_) v.assign(width, 0.0);
}

GroundLightProfile::GroundLightProfile(std::array<std::vector<double>, 3> values)
    : values_(std::move(values)) {
    if (values_[0].empty() || values_[1].size() != values_[0].size() ||
        values_[2].size() != values_[0].size())
        throw std::invalid_argument("GroundLightProfile: channels must be nonempty and equal-length");
    validate();
}

void GroundLightProfile::validate() const {
    for (const auto& chan : values_)
        for (double v : chan)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("GroundLightProfile: values must be finite and >= 0");
}

DepthMap::DepthMap(int width, int height)
    : width_(width), height_(height),
      meters_(static_cast<std::size_t>(width) * height, kInfiniteDepth) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("DepthMap: width and height must be >= 1");
}

DepthMap::DepthMap(int width, int height, std::vector<double> meters)
    : width_(width), height_(height), meters_(std::move(meters)) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("DepthMap: width and height must be >= 1");
    if (meters_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("DepthMap: data length must be width*height");
    validate();
}

void DepthMap::validate() const {
    for (double m : meters_) {
        if (std::isnan(m) || (std::isfinite(m) && m <= 0.0))
            throw std::invalid_argument("DepthMap: finite depths must be > 0");
    }
}

SkyMask::SkyMask(int width, int height, std::vector<int> skyline)
    : height_(height), skyline_(std::move(skyline)) {
    if (static_cast<int>(skyline_.size()) != width)
        throw std::invalid_argument("SkyMask: one skyline entry per column required");
    for (int s : skyline_)
        if (s < 0 || s > height)
            throw std::invalid_argument("SkyMask: skyline indices must lie in [0, height]");
}

SkyMask SkyMask::all_sky(int width, int height) {
    return SkyMask(width, height, std::vector<int>(width, height));
}

int SkyMask::min_sky_height() const {
    int m = height_;
    for (int s : skyline_) m = std::min(m, s);
    return m;
}

}  // namespace skyclear
