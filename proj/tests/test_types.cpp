#include <skyclear/types.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

using namespace skyclear;

TEST_CASE("RadianceImage construction and indexing") {
    RadianceImage img(4, 3);
    CHECK(img.width() == 4);
    CHECK(img.height() == 3);
    CHECK(img.data().size() == 3u * 4u * 3u);
    for (double v : img.data()) CHECK(v == 0.0);

    img.at(2, 3, 1) = 0.75;
    CHECK(img.at(2, 3, 1) == 0.75);
    CHECK(img.plane(2)[1 * 4 + 3] == 0.75);
    CHECK(img.row(2, 1)[3] == 0.75);

    CHECK_THROWS_AS(RadianceImage(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(RadianceImage(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(RadianceImage(2, 2, std::vector<double>(5, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("RadianceImage validate rejects non-physical samples") {
    RadianceImage img(2, 2);
    CHECK_NOTHROW(img.validate());

    img.at(0, 0, 0) = -1e-9;
    CHECK_THROWS_AS(img.validate(), std::invalid_argument);

    img.at(0, 0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(img.validate(), std::invalid_argument);

    img.at(0, 0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(img.validate(), std::invalid_argument);

    img.at(0, 0, 0) = 7.5;  // unbounded above is fine
    CHECK_NOTHROW(img.validate());
}

TEST_CASE("RadianceImage luminance uses Rec.709 weights") {
    RadianceImage img(1, 1);
    img.at(0, 0, 0) = 1.0;
    img.at(1, 0, 0) = 1.0;
    img.at(2, 0, 0) = 1.0;
    CHECK(img.luminance(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    img.at(1, 0, 0) = 0.0;
    img.at(2, 0, 0) = 0.0;
    CHECK(img.luminance(0, 0) == doctest::Approx(0.2126).epsilon(1e-12));
}

TEST_CASE("CameraGeometry pixel coordinate convention") {
    CameraGeometry geom(1000.0, 101, 81);
    CHECK(geom.half_height_px() == 40.0);

    // Bottom row sits exactly at y = -h and is a horizontal ray.
    CHECK(geom.y_of(80) == -40.0);
    CHECK(geom.y_of(0) == 40.0);
    CHECK(geom.x_of(50) == 0.0);
    CHECK(geom.x_of(0) == -50.0);
    CHECK(geom.elevation_at(17, 80) == 0.0);

    // Elevation stays in [0, sqrt(2)) over the whole frame.
    const double root2 = std::sqrt(2.0);
    for (int r = 0; r < geom.height(); ++r) {
        for (int c = 0; c < geom.width(); ++c) {
            const double s = geom.elevation_at(c, r);
            CHECK(s >= 0.0);
            CHECK(s < root2);
        }
    }

    // Looking straight along the axis from the vertical midline: s = h/f scaled.
    const double s_mid = geom.elevation(0.0, 0.0);
    CHECK(s_mid == doctest::Approx(40.0 / 1000.0).epsilon(1e-12));
}

TEST_CASE("CameraGeometry validation") {
    CHECK_THROWS_AS(CameraGeometry(0.0, 100, 100), std::invalid_argument);
    CHECK_THROWS_AS(CameraGeometry(-5.0, 100, 100), std::invalid_argument);
    CHECK_THROWS_AS(CameraGeometry(1000.0, 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(CameraGeometry(1000.0, 100, 0), std::invalid_argument);
    // focal length must exceed the half-height or s can reach sqrt(2)
    CHECK_THROWS_AS(CameraGeometry(40.0, 100, 100), std::invalid_argument);
    CHECK_NOTHROW(CameraGeometry(50.0, 100, 100));
}

TEST_CASE("Atmosphere invariants and presets") {
    Atmosphere def;
    CHECK(def.beta[0] == 1e-4);
    CHECK(def.quad_rel_tol == 1e-8);
    CHECK(def.tau_max_factor == 15.0);
    CHECK(def.path_cap(0) == doctest::Approx(15.0 / 1e-4).epsilon(1e-15));

    CHECK(Atmosphere::aerosol_free().beta[1] == 2.8e-5);
    CHECK(Atmosphere::slight_haze().beta[1] == 1e-4);
    CHECK(Atmosphere::haze().beta[1] == 1e-3);

    CHECK_THROWS_AS(Atmosphere(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Atmosphere(-1e-4), std::invalid_argument);
    CHECK_THROWS_AS(Atmosphere(1.5), std::invalid_argument);
    CHECK_NOTHROW(Atmosphere(1.0));
    CHECK_THROWS_AS(Atmosphere(1e-4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Atmosphere(1e-4, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(Atmosphere(1e-4, 1e-8, 5.0), std::invalid_argument);
}

TEST_CASE("GroundLightProfile validation") {
    GroundLightProfile p(8);
    CHECK(p.width() == 8);
    CHECK_NOTHROW(p.validate());
    p.at(1, 3) = -0.25;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.at(1, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("DepthMap invariants") {
    DepthMap sky(5, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 5; ++c) {
            CHECK(sky.at(c, r) == kInfiniteDepth);
            CHECK(!sky.valid(c, r));
        }
    CHECK_NOTHROW(sky.validate());

    std::vector<double> d(20, 100.0);
    d[7] = kInfiniteDepth;
    DepthMap mixed(5, 4, d);
    CHECK(mixed.valid(0, 0));
    CHECK(!mixed.valid(2, 1));

    d[3] = 0.0;  // finite depths must be positive
    CHECK_THROWS_AS(DepthMap(5, 4, d), std::invalid_argument);
    d[3] = -2.0;
    CHECK_THROWS_AS(DepthMap(5, 4, d), std::invalid_argument);
    d[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(DepthMap(5, 4, d), std::invalid_argument);
    CHECK_THROWS_AS(DepthMap(5, 4, std::vector<double>(7, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("SkyMask semantics") {
    SkyMask all = SkyMask::all_sky(6, 10);
    CHECK(all.width() == 6);
    CHECK(all.height() == 10);
    CHECK(all.min_sky_height() == 10);
    CHECK(all.is_sky(3, 9));

    SkyMask m(3, 10, std::vector<int>{4, 0, 10});
    CHECK(m.skyline(0) == 4);
    CHECK(m.is_sky(0, 3));
    CHECK(!m.is_sky(0, 4));
    CHECK(!m.is_sky(1, 0));   // skyline 0: no sky in that column
    CHECK(m.is_sky(2, 9));    // skyline = height: whole column is sky
    CHECK(m.min_sky_height() == 0);

    CHECK_THROWS_AS(SkyMask(3, 10, std::vector<int>{4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(SkyMask(3, 10, std::vector<int>{4, 0, 11}), std::invalid_argument);
    CHECK_THROWS_AS(SkyMask(3, 10, std::vector<int>{4, -1, 10}), std::invalid_argument);
}
