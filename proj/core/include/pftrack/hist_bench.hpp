#ifndef PFTRACK_HIST_BENCH_HPP_
#define PFTRACK_HIST_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pftrack/features.hpp"
#include "pftrack/image.hpp"

namespace pftrack {

/// Per-bin pixel counting by direct region scan; the slow route the
/// integral histogram replaces.
std::vector<std::uint32_t> naive_region_counts(const ImageBuffer& img, const RegionRect& region,
                                               const QuantizerSpec& spec, FeatureMode mode,
                                               const GradientField* gradients = nullptr);

struct HistBenchRow {
    int particles = 0;
    double naive_total_s = 0.0;
    double integral_build_s = 0.0;
    double integral_query_s = 0.0;
};

/// Times naive vs integral region-histogram computation for each particle
/// count: wall-clock medians over 5 repetitions, random regions fixed by seed.
std::vector<HistBenchRow> bench_histograms(const ImageBuffer& img,
                                           const std::vector<int>& particle_counts,
                                           int region_w, int region_h,
                                           std::uint64_t seed = 1);

void write_hist_bench_csv(const std::vector<HistBenchRow>& rows, const std::string& path);

} // namespace pftrack

#endif
