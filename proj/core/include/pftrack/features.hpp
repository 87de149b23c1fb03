#ifndef PFTRACK_FEATURES_HPP_
#define PFTRACK_FEATURES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "pftrack/histogram.hpp"
#include "pftrack/image.hpp"

namespace pftrack {

/// Per-pixel Sobel gradient magnitude and orientation.
/// Orientation is arctan(g_y/g_x) in (-pi/2, pi/2], with pi/2 when g_x == 0.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<float> magnitude;
    std::vector<float> orientation;

    float mag(int x, int y) const { return magnitude[static_cast<std::size_t>(y) * width + x]; }
    float ori(int x, int y) const { return orientation[static_cast<std::size_t>(y) * width + x]; }
};

/// Bin layout for the color and edge quantizers.
struct QuantizerSpec {
    int hue_bins = 8;
    int sat_bins = 8;
    int val_bins = 4;
    int orientation_bins = 16;
    double magnitude_threshold = 25.0; // on the raw 8-bit Sobel magnitude scale

    int color_bin_count() const { return hue_bins * sat_bins * val_bins; }
};

enum class FeatureMode { Color, Edge };

struct Hsv {
    double h; // degrees [0, 360)
    double s; // [0, 1]
    double v; // [0, 1]
};

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// 3x3 Sobel on the 0.299/0.587/0.114 grayscale, borders edge-replicated.
GradientField sobel_gradients(const ImageBuffer& img);

int quantize_color(const Hsv& hsv, const QuantizerSpec& spec);

/// nullopt for pixels below the magnitude threshold (non-edge pixels).
std::optional<int> quantize_orientation(double theta, double magnitude, const QuantizerSpec& spec);

/// Quadratic kernel: 1 - x^2 for x < 1, else 0 (normalization absorbed by C_l).
double epanechnikov(double x_norm);

/// Kernel-weighted histogram over a region; kernel radius is the region
/// half-diagonal so corner pixels sit at radius 1. Edge mode needs gradients
/// for the whole image and skips below-threshold pixels.
Histogram weighted_region_histogram(const ImageBuffer& img, const RegionRect& region,
                                    const QuantizerSpec& spec, FeatureMode mode,
                                    const GradientField* gradients = nullptr);

} // namespace pftrack

#endif
