#include "pftrack/integral_histogram.hpp"

namespace pftrack {

IntegralHistogram::IntegralHistogram(const ImageBuffer& img, const QuantizerSpec& spec,
                                     FeatureMode mode, const GradientField* gradients)
    : width_(img.width),
      height_(img.height),
      bin_count_(mode == FeatureMode::Color ? spec.color_bin_count() : spec.orientation_bins),
      mode_(mode),
      table_(static_cast<std::size_t>(width_ + 1) * (height_ + 1) * bin_count_, 0)
{
    const std::size_t row_stride = static_cast<std::size_t>(width_ + 1) * bin_count_;
    std::vector<std::uint32_t> row_accum(bin_count_);

    for (int y = 0; y < height_; ++y) {
        std::fill(row_accum.begin(), row_accum.end(), 0);
        const std::uint32_t* prev_row = table_.data() + static_cast<std::size_t>(y) * row_stride;
        std::uint32_t* cur_row = table_.data() + static_cast<std::size_t>(y + 1) * row_stride;

        for (int x = 0; x < width_; ++x) {
            if (mode_ == FeatureMode::Color) {
                const std::uint8_t* p = img.at(x, y);
                ++row_accum[quantize_color(rgb_to_hsv(p[0], p[1], p[2]), spec)];
            } else {
                const auto bin = quantize_orientation(gradients->ori(x, y),
                                                      gradients->mag(x, y), spec);
                if (bin)
                    ++row_accum[*bin];
            }
            // The three ranges never overlap (distinct table rows plus a local
            // accumulator); telling the compiler so lets it vectorize the loop.
            const std::uint32_t* __restrict__ above =
                prev_row + static_cast<std::size_t>(x + 1) * bin_count_;
            std::uint32_t* __restrict__ cell =
                cur_row + static_cast<std::size_t>(x + 1) * bin_count_;
            const std::uint32_t* __restrict__ accum = row_accum.data();
            for (int n = 0; n < bin_count_; ++n)
                cell[n] = above[n] + accum[n];
        }
    }
}

std::vector<std::uint32_t> IntegralHistogram::region_counts(const RegionRect& region) const
{
    const auto clamped = clamp_region(region, width_, height_);
    if (!clamped)
        throw EmptyRegion();
    const int x1 = clamped->x;
    const int y1 = clamped->y;
    const int x2 = clamped->x + clamped->w;
    const int y2 = clamped->y + clamped->h;

    std::vector<std::uint32_t> counts(bin_count_);
    for (int n = 0; n < bin_count_; ++n)
        counts[n] = at(x2, y2, n) - at(x1, y2, n) - at(x2, y1, n) + at(x1, y1, n);
    return counts;
}

IntegralHistogram build_integral_histogram(const ImageBuffer& img, const QuantizerSpec& spec,
                                           FeatureMode mode, const GradientField* gradients)
{
    return IntegralHistogram(img, spec, mode, gradients);
}

Histogram region_histogram_query(const IntegralHistogram& ih, const RegionRect& region)
{
    const auto counts = ih.region_counts(region);
    Histogram h;
    h.bins.assign(counts.begin(), counts.end());
    return normalize(std::move(h)); // throws ZeroCount when nothing was counted
}

} // namespace pftrack
