#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pftrack/features.hpp"
#include "pftrack/hist_bench.hpp"
#include "pftrack/histogram.hpp"
#include "pftrack/integral_histogram.hpp"
#include "pftrack/particle_filter.hpp"
#include "pftrack/synthetic.hpp"
#include "pftrack/tracker.hpp"

namespace {

using namespace pftrack;

ImageBuffer make_frame(int w, int h)
{
    SynthSpec spec;
    spec.width = w;
    spec.height = h;
    return render_synth_frame(spec, 0);
}

ParticleSet make_cloud(int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 100.0);
    std::exponential_distribution<double> wdist(1.0);
    ParticleSet set;
    set.particles.resize(count);
    for (auto& p : set.particles) {
        p.state = {pos(rng), pos(rng)};
        p.weight = wdist(rng);
    }
    return normalize_weights(std::move(set));
}

void bm_sobel(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    for (auto _ : state)
        benchmark::DoNotOptimize(sobel_gradients(img));
}
BENCHMARK(bm_sobel);

void bm_integral_build_color(benchmark::State& state)
{
    const auto img = make_frame(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(0)) * 3 / 4);
    QuantizerSpec spec;
    for (auto _ : state)
        benchmark::DoNotOptimize(IntegralHistogram(img, spec, FeatureMode::Color));
}
BENCHMARK(bm_integral_build_color)->Arg(160)->Arg(320)->Arg(480);

void bm_integral_build_edge(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    const auto gradients = sobel_gradients(img);
    QuantizerSpec spec;
    for (auto _ : state)
        benchmark::DoNotOptimize(IntegralHistogram(img, spec, FeatureMode::Edge, &gradients));
}
BENCHMARK(bm_integral_build_edge);

void bm_integral_query(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    QuantizerSpec spec;
    const IntegralHistogram ih(img, spec, FeatureMode::Color);
    const RegionRect region{100, 80, 40, 48};
    for (auto _ : state)
        benchmark::DoNotOptimize(ih.region_counts(region));
}
BENCHMARK(bm_integral_query);

void bm_naive_region(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    QuantizerSpec spec;
    const RegionRect region{100, 80, static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(naive_region_counts(img, region, spec, FeatureMode::Color));
}
BENCHMARK(bm_naive_region)->Arg(48)->Arg(96)->Arg(160);

void bm_weighted_histogram(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    QuantizerSpec spec;
    const RegionRect region{100, 80, 40, 48};
    for (auto _ : state)
        benchmark::DoNotOptimize(weighted_region_histogram(img, region, spec, FeatureMode::Color));
}
BENCHMARK(bm_weighted_histogram);

void bm_bhattacharyya(benchmark::State& state)
{
    const auto img = make_frame(320, 240);
    QuantizerSpec spec;
    const auto p = weighted_region_histogram(img, {100, 80, 40, 48}, spec, FeatureMode::Color);
    const auto q = weighted_region_histogram(img, {110, 90, 40, 48}, spec, FeatureMode::Color);
    for (auto _ : state)
        benchmark::DoNotOptimize(bhattacharyya_coefficient(p, q));
}
BENCHMARK(bm_bhattacharyya);

void bm_resample_traditional(benchmark::State& state)
{
    const auto set = make_cloud(static_cast<int>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(resample_traditional(set, 7));
}
BENCHMARK(bm_resample_traditional)->Arg(100)->Arg(1000);

void bm_resample_improved(benchmark::State& state)
{
    const auto set = make_cloud(static_cast<int>(state.range(0)), 11);
    ResampleConfig cfg;
    const WeightFn score = [](const std::vector<double>& s) {
        return 1.0 / (1.0 + s[0] * s[0] + s[1] * s[1]);
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(resample_improved(set, cfg, score, 7));
}
BENCHMARK(bm_resample_improved)->Arg(100)->Arg(1000);

void bm_track_frame(benchmark::State& state)
{
    SynthSpec spec;
    const auto first = render_synth_frame(spec, 0);
    const auto second = render_synth_frame(spec, 1);
    TrackerConfig cfg;
    cfg.fast_histograms = state.range(0) != 0;
    Tracker tracker(first, synth_target_rect(spec, 0), cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(tracker.track_frame(second));
}
BENCHMARK(bm_track_frame)->Arg(0)->Arg(1);

} // namespace

BENCHMARK_MAIN();
