#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pftrack/features.hpp"

using namespace pftrack;

namespace {

ImageBuffer constant_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    ImageBuffer img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            auto* p = img.at(x, y);
            p[0] = r;
            p[1] = g;
            p[2] = b;
        }
    return img;
}

ImageBuffer random_image(int w, int h, std::uint64_t seed)
{
    ImageBuffer img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& v : img.pixels)
        v = static_cast<std::uint8_t>(byte(rng));
    return img;
}

} // namespace

TEST_CASE("rgb_to_hsv primary colors and gray")
{
    auto hsv = rgb_to_hsv(255, 0, 0);
    CHECK(hsv.h == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hsv.s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hsv.v == doctest::Approx(1.0).epsilon(1e-12));

    hsv = rgb_to_hsv(128, 128, 128);
    CHECK(hsv.h == 0.0);
    CHECK(hsv.s == 0.0);
    CHECK(hsv.v == doctest::Approx(128.0 / 255.0).epsilon(1e-12));

    hsv = rgb_to_hsv(0, 255, 0);
    CHECK(hsv.h == doctest::Approx(120.0).epsilon(1e-9));
    CHECK(hsv.s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hsv.v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sobel_gradients on constant and step images")
{
    const auto flat = constant_image(8, 8, 77, 77, 77);
    const auto g = sobel_gradients(flat);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(g.mag(x, y) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(sobel_gradients(constant_image(2, 2, 0, 0, 0)), ImageTooSmall);

    // Horizontal step edge (top dark, bottom bright): g_x = 0 so theta = pi/2
    // on the transition rows; interior columns of a vertical step instead give
    // theta = 0 (pure g_x).
    ImageBuffer vstep(9, 9);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x) {
            const std::uint8_t v = x < 4 ? 0 : 255;
            auto* p = vstep.at(x, y);
            p[0] = p[1] = p[2] = v;
        }
    const auto gv = sobel_gradients(vstep);
    for (int y = 1; y < 8; ++y) {
        CHECK(gv.mag(4, y) > 0.0f);
        CHECK(gv.ori(4, y) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("sobel_gradients hand-convolved 3x3 patch")
{
    // Rows 0/0/255 in grayscale: center g_y = 4*255, g_x = 0, theta = pi/2.
    ImageBuffer img(3, 3);
    for (int x = 0; x < 3; ++x) {
        auto* p = img.at(x, 2);
        p[0] = p[1] = p[2] = 255;
    }
    const auto g = sobel_gradients(img);
    CHECK(g.mag(1, 1) == doctest::Approx(1020.0).epsilon(1e-6));
    CHECK(g.ori(1, 1) == doctest::Approx(M_PI / 2.0).epsilon(1e-6));
}

TEST_CASE("sobel mirror symmetry")
{
    // Horizontal mirroring flips the sign of g_x: magnitudes match and
    // orientations negate (up to the pi/2 branch for g_x == 0).
    const auto img = random_image(16, 12, 21);
    ImageBuffer mirrored(16, 12);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x) {
            const auto* src = img.at(15 - x, y);
            auto* dst = mirrored.at(x, y);
            dst[0] = src[0];
            dst[1] = src[1];
            dst[2] = src[2];
        }
    const auto g = sobel_gradients(img);
    const auto gm = sobel_gradients(mirrored);
    for (int y = 1; y < 11; ++y)
        for (int x = 1; x < 15; ++x) {
            CHECK(std::abs(gm.mag(x, y) - g.mag(15 - x, y)) < 1e-2);
            const double a = gm.ori(x, y);
            const double b = g.ori(15 - x, y);
            // theta = pi/2 maps to itself under negation on (-pi/2, pi/2].
            const bool matches = std::abs(a + b) < 1e-4 ||
                                 std::abs(std::abs(a) - M_PI / 2.0) < 1e-4;
            CHECK(matches);
        }
}

TEST_CASE("quantize_color examples and totality")
{
    QuantizerSpec spec;
    CHECK(quantize_color({0.0, 0.0, 0.0}, spec) == 0);
    CHECK(quantize_color({359.9, 1.0, 1.0}, spec) == 255);
    // h=180 -> hbin 4, s=0.5 -> sbin 4, v=0.5 -> vbin 2: 4*32 + 4*4 + 2.
    CHECK(quantize_color({180.0, 0.5, 0.5}, spec) == 146);

    // Totality: every valid triple maps into [0, 256).
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uh(0.0, 360.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const int bin = quantize_color({std::min(uh(rng), 359.999), u01(rng), u01(rng)}, spec);
        CHECK(bin >= 0);
        CHECK(bin < spec.color_bin_count());
    }
    CHECK(quantize_color({360.0 - 1e-9, 1.0, 1.0}, spec) < 256);
}

TEST_CASE("quantize_orientation gating and bin arithmetic")
{
    QuantizerSpec spec;
    CHECK(!quantize_orientation(0.3, 0.0, spec).has_value());
    CHECK(!quantize_orientation(0.3, spec.magnitude_threshold - 1.0, spec).has_value());

    // theta = 0 sits exactly mid-range of (-pi/2, pi/2], i.e. bin 8 of 16.
    auto bin = quantize_orientation(0.0, 100.0, spec);
    REQUIRE(bin.has_value());
    CHECK(*bin == 8);

    bin = quantize_orientation(-M_PI / 2.0 + 1e-6, 100.0, spec);
    REQUIRE(bin.has_value());
    CHECK(*bin == 0);

    bin = quantize_orientation(M_PI / 2.0, 100.0, spec);
    REQUIRE(bin.has_value());
    CHECK(*bin == 15);
}

TEST_CASE("epanechnikov kernel values")
{
    CHECK(epanechnikov(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(epanechnikov(1.0) == 0.0);
    CHECK(epanechnikov(1.5) == 0.0);
    CHECK(epanechnikov(0.5) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("weighted_region_histogram single-color region is a delta")
{
    QuantizerSpec spec;
    const auto img = constant_image(20, 20, 255, 0, 0);
    const auto h = weighted_region_histogram(img, {2, 2, 10, 10}, spec, FeatureMode::Color);
    double sum = 0.0;
    int support = 0;
    for (double v : h.bins) {
        sum += v;
        if (v > 0.0)
            support++;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(support == 1);
}

TEST_CASE("weighted_region_histogram matches a brute-force oracle")
{
    QuantizerSpec spec;
    const auto img = random_image(16, 16, 99);
    const RegionRect region{3, 2, 9, 11};
    const auto h = weighted_region_histogram(img, region, spec, FeatureMode::Color);

    // Independent accumulation: Epanechnikov weight by distance to the region
    // center with the half-diagonal as kernel radius, then normalize.
    std::vector<double> oracle(static_cast<std::size_t>(spec.color_bin_count()), 0.0);
    const double cx = region.x + (region.w - 1) / 2.0;
    const double cy = region.y + (region.h - 1) / 2.0;
    const double radius = std::hypot((region.w - 1) / 2.0, (region.h - 1) / 2.0);
    double total = 0.0;
    for (int y = region.y; y < region.y + region.h; ++y)
        for (int x = region.x; x < region.x + region.w; ++x) {
            const auto* p = img.at(x, y);
            const double r = std::hypot(x - cx, y - cy) / radius;
            const double k = r < 1.0 ? 1.0 - r * r : 0.0;
            const int bin = quantize_color(rgb_to_hsv(p[0], p[1], p[2]), spec);
            oracle[static_cast<std::size_t>(bin)] += k;
            total += k;
        }
    for (auto& v : oracle)
        v /= total;

    REQUIRE(h.bins.size() == oracle.size());
    for (std::size_t n = 0; n < oracle.size(); ++n)
        CHECK(h.bins[n] == doctest::Approx(oracle[n]).epsilon(1e-12));
}

TEST_CASE("weighted_region_histogram kernel monotonicity")
{
    // A pixel closer to the center never gets less kernel weight: place two
    // single-pixel colors symmetrically and compare their histogram mass.
    QuantizerSpec spec;
    auto img = constant_image(21, 21, 0, 0, 0);
    auto* near = img.at(10, 9); // 1 px from center
    near[0] = 255;              // red
    auto* far = img.at(10, 1);  // 9 px from center
    far[1] = 255;               // green
    const auto h = weighted_region_histogram(img, {0, 0, 21, 21}, spec, FeatureMode::Color);
    const int red_bin = quantize_color(rgb_to_hsv(255, 0, 0), spec);
    const int green_bin = quantize_color(rgb_to_hsv(0, 255, 0), spec);
    CHECK(h.bins[static_cast<std::size_t>(red_bin)] >
          h.bins[static_cast<std::size_t>(green_bin)]);
}

TEST_CASE("weighted_region_histogram error cases")
{
    QuantizerSpec spec;
    const auto img = constant_image(10, 10, 50, 50, 50);
    CHECK_THROWS_AS(
        weighted_region_histogram(img, {-20, -20, 5, 5}, spec, FeatureMode::Color),
        EmptyRegion);

    const auto gradients = sobel_gradients(img);
    CHECK_THROWS_AS(weighted_region_histogram(img, {1, 1, 8, 8}, spec, FeatureMode::Edge,
                                              &gradients),
                    AllPixelsBelowEdgeThreshold);
}

TEST_CASE("weighted_region_histogram edge mode sums to one")
{
    QuantizerSpec spec;
    ImageBuffer img(24, 24);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x) {
            const std::uint8_t v = (y / 4) % 2 ? 200 : 30;
            auto* p = img.at(x, y);
            p[0] = p[1] = p[2] = v;
        }
    const auto gradients = sobel_gradients(img);
    const auto h =
        weighted_region_histogram(img, {2, 2, 20, 20}, spec, FeatureMode::Edge, &gradients);
    double sum = 0.0;
    for (double v : h.bins) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}
