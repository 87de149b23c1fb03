#ifndef PFTRACK_IMAGE_HPP_
#define PFTRACK_IMAGE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pftrack/errors.hpp"

namespace pftrack {

/// Row-major 8-bit RGB image.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 bytes per pixel

    ImageBuffer() = default;
    ImageBuffer(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    std::uint8_t* at(int x, int y) {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

/// Axis-aligned pixel rectangle, top-left anchored.
struct RegionRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
};

/// Intersects a rectangle with image bounds. Empty result -> nullopt.
std::optional<RegionRect> clamp_region(const RegionRect& region, int width, int height);

ImageBuffer load_ppm(const std::string& path);
void save_ppm(const ImageBuffer& img, const std::string& path);

} // namespace pftrack

#endif
