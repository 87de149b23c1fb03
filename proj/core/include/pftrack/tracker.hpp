#ifndef PFTRACK_TRACKER_HPP_
#define PFTRACK_TRACKER_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "pftrack/features.hpp"
#include "pftrack/histogram.hpp"
#include "pftrack/image.hpp"
#include "pftrack/integral_histogram.hpp"
#include "pftrack/particle_filter.hpp"

namespace pftrack {

/// Window center and size multiplier relative to the initial window.
struct TargetState {
    double cx = 0.0;
    double cy = 0.0;
    double scale = 1.0;
};

/// AR(2) motion model; (2, -1) is constant velocity.
struct MotionModel {
    double phi1 = 2.0;
    double phi2 = -1.0;
    double noise_std_pos = 8.0;
    double noise_std_scale = 0.02;

    /// True when the coefficients lie inside the AR(2) stationarity triangle.
    bool is_stationary() const;
};

/// Reference color and edge histograms plus fusion state.
struct TargetTemplate {
    Histogram color_initial;
    Histogram color_current;
    Histogram edge_initial;
    Histogram edge_current;
    double theta_color = 0.5;
    double theta_edge = 0.5;
    double tau_inv = 0.1;         // weight on the anchored initial template
    double spread_baseline = 0.0; // D0 in pixels; 0 means not yet established
    int window_w = 0;
    int window_h = 0;
};

struct TrackerConfig {
    int particle_count = 100;
    ResampleConfig resample;
    LikelihoodParams likelihood;
    QuantizerSpec quantizer;
    MotionModel motion;
    double tau_inv = 0.1;
    double fusion_alpha = 0.7;       // EMA smoothing of fusion weights
    double scale_clamp_min = 0.95;   // per-frame window scale bounds
    double scale_clamp_max = 1.05;
    double scale_min = 0.2;
    double scale_max = 5.0;
    bool fast_histograms = true;     // integral-histogram path
    bool color_only = false;         // theta_edge = 0, adaptation off
    bool adapt_fusion = true;
    bool adapt_template = true;
    bool adapt_window = true;
    std::uint64_t seed = 0;
};

struct FrameDiagnostics {
    double ess = 0.0;
    double theta_color = 0.0;
    double d_color = 0.0;   // Bhattacharyya distance at the estimate
    double rho_edge = 0.0;  // edge Bhattacharyya coefficient at the estimate
    bool resampled = false;
    bool lost = false;
};

struct FrameResult {
    TargetState state;
    RegionRect rect;
    FrameDiagnostics diag;
};

/// One motion step: positions follow c_t = phi1*c_{t-1} + phi2*c_{t-2} + noise,
/// scale follows a random walk s_t = s_{t-1} + noise (clamped).
TargetState propagate(const TargetState& prev1, const TargetState& prev2,
                      const MotionModel& model, double noise_cx, double noise_cy,
                      double noise_scale, double scale_min, double scale_max);

/// theta_l * p_color(d_color) + theta_m * p_edge(rho_edge).
double fused_likelihood(double d_color, double rho_edge, double theta_color,
                        double theta_edge, const LikelihoodParams& params);

/// Moves fusion weights toward each feature's similarity share, EMA-smoothed.
/// Leaves them unchanged when both similarities are zero.
TargetTemplate adapt_fusion_weights(TargetTemplate tmpl, double rho_color,
                                    double rho_edge, double alpha);

/// Blends the anchored initial template with the current-estimate histograms:
/// H_new = tau_inv * H_initial + (1 - tau_inv) * H_current, renormalized.
TargetTemplate update_template(TargetTemplate tmpl, const Histogram& color_current,
                               const Histogram& edge_current);

/// Weighted particle spread around the estimate, for window adaptation.
double particle_spread(const ParticleSet& set, const TargetState& estimate);

/// Rescales the estimate by clamp(spread / baseline, clamp_min, clamp_max).
TargetState adapt_window(const ParticleSet& set, TargetState estimate,
                         const TargetTemplate& tmpl, double clamp_min, double clamp_max);

/// Full tracking loop over one image sequence.
class Tracker {
public:
    Tracker(const ImageBuffer& first_frame, const RegionRect& init_box, TrackerConfig cfg);

    FrameResult track_frame(const ImageBuffer& frame);

    const TargetTemplate& target_template() const { return template_; }
    const ParticleSet& particles() const { return particles_; }
    const TrackerConfig& config() const { return cfg_; }

private:
    RegionRect state_rect(double cx, double cy, double scale) const;
    void rediffuse(const TargetState& around);

    TrackerConfig cfg_;
    TargetTemplate template_;
    ParticleSet particles_; // state layout: cx, cy, scale, prev cx, prev cy, prev scale
    TargetState last_estimate_;
    std::mt19937_64 rng_;
    int consecutive_lost_ = 0;

    static constexpr int kSpreadCalibrationFrames = 4;
    int spread_samples_ = 0;
    double spread_accum_ = 0.0;
};

} // namespace pftrack

#endif
