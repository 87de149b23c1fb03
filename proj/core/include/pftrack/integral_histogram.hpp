#ifndef PFTRACK_INTEGRAL_HISTOGRAM_HPP_
#define PFTRACK_INTEGRAL_HISTOGRAM_HPP_

#include <cstdint>
#include <vector>

#include "pftrack/features.hpp"
#include "pftrack/histogram.hpp"
#include "pftrack/image.hpp"

namespace pftrack {

/// Per-bin 2-D cumulative count table. Entry (x, y, n) is the number of
/// pixels with bin n inside the rectangle [0,x) x [0,y), so any rectangle
/// histogram is four lookups per bin. Counts are integers; normalization
/// happens at query time.
class IntegralHistogram {
public:
    IntegralHistogram(const ImageBuffer& img, const QuantizerSpec& spec, FeatureMode mode,
                      const GradientField* gradients = nullptr);

    int width() const { return width_; }
    int height() const { return height_; }
    int bin_count() const { return bin_count_; }
    FeatureMode mode() const { return mode_; }

    std::uint32_t at(int x, int y, int bin) const {
        return table_[(static_cast<std::size_t>(y) * (width_ + 1) + x) * bin_count_ + bin];
    }

    /// Raw inclusion-exclusion counts for a region (clamped to image bounds).
    std::vector<std::uint32_t> region_counts(const RegionRect& region) const;

private:
    int width_;
    int height_;
    int bin_count_;
    FeatureMode mode_;
    std::vector<std::uint32_t> table_; // (width+1) x (height+1) x bin_count, row-major
};

IntegralHistogram build_integral_histogram(const ImageBuffer& img, const QuantizerSpec& spec,
                                           FeatureMode mode,
                                           const GradientField* gradients = nullptr);

/// Normalized region histogram in O(bin_count), independent of region area.
/// Throws ZeroCount when the region holds no counted pixels (edge mode).
Histogram region_histogram_query(const IntegralHistogram& ih, const RegionRect& region);

} // namespace pftrack

#endif
