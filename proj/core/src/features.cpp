#include "pftrack/features.hpp"

#include <algorithm>
#include <cmath>

namespace pftrack {

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    const double rf = r / 255.0;
    const double gf = g / 255.0;
    const double bf = b / 255.0;
    const double maxc = std::max({rf, gf, bf});
    const double minc = std::min({rf, gf, bf});
    const double delta = maxc - minc;

    double h = 0.0;
    if (delta > 0.0) {
        if (maxc == rf)
            h = 60.0 * ((gf - bf) / delta);
        else if (maxc == gf)
            h = 60.0 * ((bf - rf) / delta + 2.0);
        else
            h = 60.0 * ((rf - gf) / delta + 4.0);
        if (h < 0.0)
            h += 360.0;
    }
    const double s = maxc > 0.0 ? delta / maxc : 0.0;
    return {h, s, maxc};
}

GradientField sobel_gradients(const ImageBuffer& img)
{
    if (img.width < 3 || img.height < 3)
        throw ImageTooSmall("sobel needs at least a 3x3 image");

    const int w = img.width;
    const int h = img.height;

    std::vector<float> gray(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint8_t* p = img.at(x, y);
            gray[static_cast<std::size_t>(y) * w + x] =
                0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
        }
    }

    auto at = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1); // edge replication
        y = std::clamp(y, 0, h - 1);
        return gray[static_cast<std::size_t>(y) * w + x];
    };

    GradientField field;
    field.width = w;
    field.height = h;
    field.magnitude.resize(gray.size());
    field.orientation.resize(gray.size());

    constexpr double half_pi = M_PI / 2.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = -at(x - 1, y - 1) + at(x + 1, y - 1)
                            - 2.0 * at(x - 1, y) + 2.0 * at(x + 1, y)
                            - at(x - 1, y + 1) + at(x + 1, y + 1);
            const double gy = -at(x - 1, y - 1) - 2.0 * at(x, y - 1) - at(x + 1, y - 1)
                            + at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1);
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            field.magnitude[i] = static_cast<float>(std::sqrt(gx * gx + gy * gy));
            if (gx == 0.0)
                field.orientation[i] = static_cast<float>(gy != 0.0 ? half_pi : 0.0);
            else
                field.orientation[i] = static_cast<float>(std::atan(gy / gx));
        }
    }
    return field;
}

int quantize_color(const Hsv& hsv, const QuantizerSpec& spec)
{
    auto bin_of = [](double t, int bins) {
        return std::min(static_cast<int>(t * bins), bins - 1);
    };
    const int hbin = bin_of(hsv.h / 360.0, spec.hue_bins);
    const int sbin = bin_of(hsv.s, spec.sat_bins);
    const int vbin = bin_of(hsv.v, spec.val_bins);
    return hbin * (spec.sat_bins * spec.val_bins) + sbin * spec.val_bins + vbin;
}

std::optional<int> quantize_orientation(double theta, double magnitude, const QuantizerSpec& spec)
{
    if (magnitude < spec.magnitude_threshold)
        return std::nullopt;
    const double t = (theta + M_PI / 2.0) / M_PI; // maps (-pi/2, pi/2] onto (0, 1]
    return std::min(static_cast<int>(t * spec.orientation_bins), spec.orientation_bins - 1);
}

double epanechnikov(double x_norm)
{
    return x_norm < 1.0 ? 1.0 - x_norm * x_norm : 0.0;
}

Histogram weighted_region_histogram(const ImageBuffer& img, const RegionRect& region,
                                    const QuantizerSpec& spec, FeatureMode mode,
                                    const GradientField* gradients)
{
    const auto clamped = clamp_region(region, img.width, img.height);
    if (!clamped)
        throw EmptyRegion();
    const RegionRect r = *clamped;

    const int bin_count = mode == FeatureMode::Color ? spec.color_bin_count()
                                                     : spec.orientation_bins;
    Histogram hist;
    hist.bins.assign(bin_count, 0.0);

    const double cx = r.x + (r.w - 1) / 2.0;
    const double cy = r.y + (r.h - 1) / 2.0;
    const double radius = std::hypot((r.w - 1) / 2.0, (r.h - 1) / 2.0);

    std::vector<std::pair<int, double>> contributions; // (bin, kernel weight)
    contributions.reserve(static_cast<std::size_t>(r.w) * r.h);

    for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
            int bin;
            if (mode == FeatureMode::Color) {
                const std::uint8_t* p = img.at(x, y);
                bin = quantize_color(rgb_to_hsv(p[0], p[1], p[2]), spec);
            } else {
                const auto maybe = quantize_orientation(gradients->ori(x, y),
                                                        gradients->mag(x, y), spec);
                if (!maybe)
                    continue;
                bin = *maybe;
            }
            const double dist = radius > 0.0 ? std::hypot(x - cx, y - cy) / radius : 0.0;
            contributions.emplace_back(bin, epanechnikov(dist));
        }
    }

    if (contributions.empty())
        throw AllPixelsBelowEdgeThreshold();

    double weight_sum = 0.0;
    for (const auto& [bin, k] : contributions)
        weight_sum += k;
    if (weight_sum > 0.0) {
        for (const auto& [bin, k] : contributions)
            hist.bins[bin] += k / weight_sum;
    } else {
        // degenerate region where every counted pixel sits on the kernel boundary
        const double uniform = 1.0 / static_cast<double>(contributions.size());
        for (const auto& [bin, k] : contributions)
            hist.bins[bin] += uniform;
    }
    return hist;
}

} // namespace pftrack
