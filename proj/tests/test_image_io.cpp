#include <skyclear/image_io.hpp>
#include <skyclear/types.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "raster_io_detail.hpp"

using namespace skyclear;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "skyclear_io_tests";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string temp_file(const std::string& name) {
    return (temp_dir() / name).string();
}

RadianceImage random_image(int w, int h, std::uint64_t seed) {
    RadianceImage img(w, h);
    oracle::TestRng rng(seed);
    for (double& v : img.data()) v = rng.uniform01();
    return img;
}

}  // namespace

TEST_CASE("sRGB transfer endpoints and midpoint") {
    CHECK(srgb_to_linear(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(srgb_to_linear(0.0) == 0.0);
    // Frozen high-precision evaluation of ((128/255 + 0.055)/1.055)^2.4.
    CHECK(srgb_to_linear(128.0 / 255.0) ==
          doctest::Approx(0.215860500113899164).epsilon(1e-14));
    CHECK(linear_to_srgb(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(linear_to_srgb(0.0) == 0.0);
}

TEST_CASE("sRGB encode/decode round trip") {
    for (int i = 0; i <= 1000; ++i) {
        const double v = i / 1000.0;
        CHECK(srgb_to_linear(linear_to_srgb(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(std::abs(linear_to_srgb(srgb_to_linear(v)) - v) <= 1e-12);
    }
}

TEST_CASE("8-bit sRGB PNG code values decode to expected linear radiance") {
    const std::string path = temp_file("gray_levels.png");
    const std::vector<std::uint16_t> samples = {0,   0,   0,    // black
                                                128, 128, 128,  // mid gray
                                                255, 255, 255}; // white
    detail::write_png(path, 3, 1, 3, 8, samples);

    const RadianceImage img = load_image(path, Transfer::Srgb);
    REQUIRE(img.width() == 3);
    REQUIRE(img.height() == 1);
    CHECK(img.at(0, 0, 0) == 0.0);
    CHECK(img.at(1, 1, 0) == doctest::Approx(0.215860500113899164).epsilon(1e-12));
    CHECK(img.at(2, 2, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant image PNG round trips exactly at the endpoints") {
    for (double level : {0.0, 1.0}) {
        RadianceImage img(5, 4);
        for (double& v : img.data()) v = level;
        const std::string path = temp_file("const.png");
        save_image(img, path, Transfer::Srgb, 16);
        const RadianceImage back = load_image(path, Transfer::Srgb);
        REQUIRE(back.same_size(img));
        for (double v : back.data()) CHECK(v == level);
    }
}

TEST_CASE("random image 16-bit PNG round trip stays within one code step") {
    const RadianceImage img = random_image(31, 17, 20260814u);
    const std::string path = temp_file("rand16.png");
    save_image(img, path, Transfer::Srgb, 16);
    const RadianceImage back = load_image(path, Transfer::Srgb);
    REQUIRE(back.same_size(img));
    double max_code_err = 0.0;
    for (std::size_t i = 0; i < img.data().size(); ++i) {
        const double e0 = linear_to_srgb(img.data()[i]);
        const double e1 = linear_to_srgb(back.data()[i]);
        max_code_err = std::max(max_code_err, std::abs(e0 - e1));
    }
    CHECK(max_code_err <= 1.0 / 65535.0);
    back.validate();
}

TEST_CASE("random image 8-bit PNG round trip stays within one code step") {
    const RadianceImage img = random_image(19, 13, 7u);
    const std::string path = temp_file("rand8.png");
    save_image(img, path, Transfer::Srgb, 8);
    const RadianceImage back = load_image(path, Transfer::Srgb);
    double max_code_err = 0.0;
    for (std::size_t i = 0; i < img.data().size(); ++i) {
        const double e0 = linear_to_srgb(img.data()[i]);
        const double e1 = linear_to_srgb(back.data()[i]);
        max_code_err = std::max(max_code_err, std::abs(e0 - e1));
    }
    CHECK(max_code_err <= 1.0 / 255.0);
}

TEST_CASE("linear-transfer PNG round trip") {
    const RadianceImage img = random_image(9, 9, 99u);
    const std::string path = temp_file("linear16.png");
    save_image(img, path, Transfer::Linear, 16);
    const RadianceImage back = load_image(path, Transfer::Linear);
    CHECK(oracle::max_abs_diff(img, back) <= 1.0 / 65535.0);
}

TEST_CASE("PNG encoding clamps out-of-range radiance") {
    RadianceImage img(2, 1);
    img.at(0, 0, 0) = 4.5;  // above display white
    img.at(1, 0, 0) = 4.5;
    img.at(2, 0, 0) = 4.5;
    const std::string path = temp_file("clamp.png");
    save_image(img, path, Transfer::Srgb, 16);
    const RadianceImage back = load_image(path, Transfer::Srgb);
    CHECK(back.at(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("PFM round trip is exact at float32 precision, values unclamped") {
    RadianceImage img = random_image(12, 7, 31u);
    img.at(0, 3, 2) = 17.25;  // outside [0,1]; PFM must keep it
    const std::string path = temp_file("roundtrip.pfm");
    save_image(img, path, Transfer::Linear);
    const RadianceImage back = load_image(path, Transfer::Linear);
    REQUIRE(back.same_size(img));
    for (std::size_t i = 0; i < img.data().size(); ++i) {
        CHECK(back.data()[i] ==
              static_cast<double>(static_cast<float>(img.data()[i])));
    }
    CHECK(back.at(0, 3, 2) == 17.25);
}

TEST_CASE("PFM ignores the transfer argument") {
    const RadianceImage img = random_image(6, 5, 5u);
    const std::string path = temp_file("transfer.pfm");
    save_image(img, path, Transfer::Srgb);
    const RadianceImage back = load_image(path, Transfer::Srgb);
    for (std::size_t i = 0; i < img.data().size(); ++i) {
        CHECK(back.data()[i] ==
              static_cast<double>(static_cast<float>(img.data()[i])));
    }
}

TEST_CASE("load_image error paths") {
    CHECK_THROWS_AS(load_image(temp_file("does_not_exist.png")), std::runtime_error);

    // Gray PNG is valid for depth maps but not for radiance images.
    const std::string gray = temp_file("gray.png");
    detail::write_png(gray, 4, 4, 1, 8, std::vector<std::uint16_t>(16, 100));
    CHECK_THROWS_AS(load_image(gray), std::runtime_error);

    // Truncated PFM header.
    const std::string bad = temp_file("bad.pfm");
    std::ofstream(bad) << "PF\n4";
    CHECK_THROWS_AS(load_image(bad), std::runtime_error);

    // Unsupported extension.
    const std::string tif = temp_file("img.tif");
    std::ofstream(tif) << "x";
    CHECK_THROWS_AS(load_image(tif), std::runtime_error);
}

TEST_CASE("save_image validates bit depth and extension") {
    const RadianceImage img = random_image(4, 4, 1u);
    CHECK_THROWS_AS(save_image(img, temp_file("bad_bits.png"), Transfer::Srgb, 12),
                    std::invalid_argument);
    CHECK_THROWS_AS(save_image(img, temp_file("bad_ext.gif")), std::runtime_error);
}
