#include "skyclear/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "raster_io_detail.hpp"

namespace skyclear {

namespace detail {

bool has_suffix(const std::string& path, const std::string& suffix) {
    if (path.size() < suffix.size()) return false;
    std::string tail = path.substr(path.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return tail == suffix;
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RawPng read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open image file: " + path);

    png_byte sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw std::runtime_error("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("PNG decode error: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));

    if (bit_depth != 8 && bit_depth != 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("unsupported PNG bit depth (want 8 or 16): " + path);
    }
    int channels;
    if (color_type == PNG_COLOR_TYPE_RGB) {
        channels = 3;
    } else if (color_type == PNG_COLOR_TYPE_GRAY) {
        channels = 1;
    } else {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("unsupported PNG color type (want plain RGB or gray): " + path);
    }

    if (bit_depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_byte> raw(rowbytes * height);
    row_ptrs.resize(height);
    for (int r = 0; r < height; ++r) row_ptrs[r] = raw.data() + rowbytes * r;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RawPng out;
    out.width = width;
    out.height = height;
    out.channels = channels;
    out.bit_depth = bit_depth;
    out.samples.resize(static_cast<std::size_t>(width) * height * channels);
    if (bit_depth == 8) {
        for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = raw[i];
    } else {
        std::memcpy(out.samples.data(), raw.data(), out.samples.size() * sizeof(std::uint16_t));
    }
    return out;
}

void write_png(const std::string& path, int width, int height, int channels, int bit_depth,
               const std::vector<std::uint16_t>& samples) {
    if (bit_depth != 8 && bit_depth != 16)
        throw std::runtime_error("PNG bit depth must be 8 or 16");
    if (channels != 1 && channels != 3)
        throw std::runtime_error("PNG channel count must be 1 or 3");

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG encode error: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, bit_depth,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);

    const std::size_t pixels_per_row = static_cast<std::size_t>(width) * channels;
    if (bit_depth == 16) {
        std::vector<png_bytep> rows(height);
        for (int r = 0; r < height; ++r) {
            rows[r] = reinterpret_cast<png_bytep>(
                const_cast<std::uint16_t*>(samples.data() + pixels_per_row * r));
        }
        png_write_image(png, rows.data());
    } else {
        std::vector<png_byte> raw(pixels_per_row * height);
        for (std::size_t i = 0; i < raw.size(); ++i)
            raw[i] = static_cast<png_byte>(samples[i] & 0xff);
        std::vector<png_bytep> rows(height);
        for (int r = 0; r < height; ++r) rows[r] = raw.data() + pixels_per_row * r;
        png_write_image(png, rows.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

RawPfm read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image file: " + path);

    std::string magic;
    in >> magic;
    int channels;
    if (magic == "PF") {
        channels = 3;
    } else if (magic == "Pf") {
        channels = 1;
    } else {
        throw std::runtime_error("not a PFM file: " + path);
    }
    int width = 0, height = 0;
    double scale = 0.0;
    in >> width >> height >> scale;
    if (!in || width < 1 || height < 1 || scale == 0.0)
        throw std::runtime_error("malformed PFM header: " + path);
    in.get();  // single whitespace after the scale

    const std::size_t count = static_cast<std::size_t>(width) * height * channels;
    std::vector<float> file_order(count);
    in.read(reinterpret_cast<char*>(file_order.data()), count * sizeof(float));
    if (!in) throw std::runtime_error("truncated PFM data: " + path);

    const bool file_little = scale < 0.0;
    const bool host_little = std::endian::native == std::endian::little;
    if (file_little != host_little) {
        for (float& f : file_order) {
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            u = __builtin_bswap32(u);
            std::memcpy(&f, &u, 4);
        }
    }
    const float mag = static_cast<float>(std::fabs(scale));
    if (mag != 1.0f)
        for (float& f : file_order) f *= mag;

    // PFM stores rows bottom-up; flip to top-down.
    RawPfm out;
    out.width = width;
    out.height = height;
    out.channels = channels;
    out.samples.resize(count);
    const std::size_t rowlen = static_cast<std::size_t>(width) * channels;
    for (int r = 0; r < height; ++r) {
        const float* src = file_order.data() + rowlen * (height - 1 - r);
        std::copy(src, src + rowlen, out.samples.data() + rowlen * r);
    }
    return out;
}

void write_pfm(const std::string& path, int width, int height, int channels,
               const std::vector<float>& samples) {
    if (channels != 1 && channels != 3)
        throw std::runtime_error("PFM channel count must be 1 or 3");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    const bool host_little = std::endian::native == std::endian::little;
    out << (channels == 3 ? "PF" : "Pf") << "\n"
        << width << " " << height << "\n"
        << (host_little ? "-1.0" : "1.0") << "\n";

    const std::size_t rowlen = static_cast<std::size_t>(width) * channels;
    for (int r = height - 1; r >= 0; --r) {
        out.write(reinterpret_cast<const char*>(samples.data() + rowlen * r),
                  rowlen * sizeof(float));
    }
    if (!out) throw std::runtime_error("PFM write failed: " + path);
}

}  // namespace detail

double srgb_to_linear(double v) {
    if (v <= 0.04045) return v / 12.92;
    return std::pow((v + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double v) {
    if (v <= 0.0031308) return v * 12.92;
    return 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

RadianceImage load_image(const std::string& path, Transfer transfer) {
    if (detail::has_suffix(path, ".pfm")) {
        detail::RawPfm raw = detail::read_pfm(path);
        if (raw.channels != 3)
            throw std::runtime_error("expected a 3-channel PFM image: " + path);
        RadianceImage img(raw.width, raw.height);
        std::size_t i = 0;
        for (int r = 0; r < raw.height; ++r)
            for (int c = 0; c < raw.width; ++c)
                for (int ch = 0; ch < kChannels; ++ch) img.at(ch, c, r) = raw.samples[i++];
        img.validate();
        return img;
    }

    detail::RawPng raw = detail::read_png(path);
    if (raw.channels != 3)
        throw std::runtime_error("expected a 3-channel RGB PNG: " + path);
    const double maxval = raw.bit_depth == 16 ? 65535.0 : 255.0;
    RadianceImage img(raw.width, raw.height);
    std::size_t i = 0;
    for (int r = 0; r < raw.height; ++r) {
        for (int c = 0; c < raw.width; ++c) {
            for (int ch = 0; ch < kChannels; ++ch) {
                const double encoded = raw.samples[i++] / maxval;
                img.at(ch, c, r) =
                    transfer == Transfer::Srgb ? srgb_to_linear(encoded) : encoded;
            }
        }
    }
    return img;
}

void save_image(const RadianceImage& img, const std::string& path, Transfer transfer,
                int png_bits) {
    if (detail::has_suffix(path, ".pfm")) {
        std::vector<float> samples(static_cast<std::size_t>(img.width()) * img.height() * kChannels);
        std::size_t i = 0;
        for (int r = 0; r < img.height(); ++r)
            for (int c = 0; c < img.width(); ++c)
                for (int ch = 0; ch < kChannels; ++ch)
                    samples[i++] = static_cast<float>(img.at(ch, c, r));
        detail::write_pfm(path, img.width(), img.height(), kChannels, samples);
        return;
    }

    if (!detail::has_suffix(path, ".png"))
        throw std::runtime_error("unsupported image extension (want .png or .pfm): " + path);
    if (png_bits != 8 && png_bits != 16)
        throw std::invalid_argument("PNG bit depth must be 8 or 16");
    const double maxval = png_bits == 16 ? 65535.0 : 255.0;
    std::vector<std::uint16_t> samples(static_cast<std::size_t>(img.width()) * img.height() *
                                       kChannels);
    std::size_t i = 0;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            for (int ch = 0; ch < kChannels; ++ch) {
                double v = img.at(ch, c, r);
                if (transfer == Transfer::Srgb) v = linear_to_srgb(v);
                v = std::clamp(v, 0.0, 1.0);
                samples[i++] = static_cast<std::uint16_t>(std::lround(v * maxval));
            }
        }
    }
    detail::write_png(path, img.width(), img.height(), kChannels, png_bits, samples);
}

}  // namespace skyclear
