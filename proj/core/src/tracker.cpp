#include "pftrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "pftrack/log.hpp"

namespace pftrack {

bool MotionModel::is_stationary() const
{
    return std::abs(phi2) < 1.0 && phi1 + phi2 < 1.0 && phi2 - phi1 < 1.0;
}

TargetState propagate(const TargetState& prev1, const TargetState& prev2,
                      const MotionModel& model, double noise_cx, double noise_cy,
                      double noise_scale, double scale_min, double scale_max)
{
    TargetState next;
    next.cx = model.phi1 * prev1.cx + model.phi2 * prev2.cx + noise_cx;
    next.cy = model.phi1 * prev1.cy + model.phi2 * prev2.cy + noise_cy;
    // Scale follows a plain random walk rather than the positional recursion:
    // a persistent "scale velocity" compounds multiplicatively and runs away
    // long before the observation model can correct it.
    next.scale = std::clamp(prev1.scale + noise_scale, scale_min, scale_max);
    return next;
}

double fused_likelihood(double d_color, double rho_edge, double theta_color,
                        double theta_edge, const LikelihoodParams& params)
{
    double value = theta_color * color_likelihood(d_color, params);
    if (theta_edge > 0.0)
        value += theta_edge * edge_likelihood(rho_edge, params);
    return value;
}

TargetTemplate adapt_fusion_weights(TargetTemplate tmpl, double rho_color,
                                    double rho_edge, double alpha)
{
    const double total = rho_color + rho_edge;
    if (!(total > 0.0))
        return tmpl;
    const double raw_color = rho_color / total;
    double theta_color = alpha * tmpl.theta_color + (1.0 - alpha) * raw_color;
    double theta_edge = alpha * tmpl.theta_edge + (1.0 - alpha) * (1.0 - raw_color);
    const double sum = theta_color + theta_edge;
    // Keep both features alive: a weight driven to zero during a long
    // disturbance would otherwise take many frames to recover.
    tmpl.theta_color = std::clamp(theta_color / sum, 0.1, 0.9);
    tmpl.theta_edge = 1.0 - tmpl.theta_color;
    return tmpl;
}

namespace {

Histogram blend_anchored(const Histogram& initial, const Histogram& current, double tau_inv)
{
    if (initial.size() != current.size())
        throw DimensionMismatch("template histogram bin counts differ");
    Histogram out;
    out.bins.resize(initial.size());
    for (std::size_t n = 0; n < initial.size(); ++n)
        out.bins[n] = tau_inv * initial.bins[n] + (1.0 - tau_inv) * current.bins[n];
    return normalize(std::move(out));
}

} // namespace

TargetTemplate update_template(TargetTemplate tmpl, const Histogram& color_current,
                               const Histogram& edge_current)
{
    tmpl.color_current = blend_anchored(tmpl.color_initial, color_current, tmpl.tau_inv);
    if (!tmpl.edge_initial.bins.empty() && !edge_current.bins.empty())
        tmpl.edge_current = blend_anchored(tmpl.edge_initial, edge_current, tmpl.tau_inv);
    return tmpl;
}

double particle_spread(const ParticleSet& set, const TargetState& estimate)
{
    double spread = 0.0;
    for (const auto& p : set.particles)
        spread += p.weight * std::hypot(p.state[0] - estimate.cx, p.state[1] - estimate.cy);
    return spread;
}

TargetState adapt_window(const ParticleSet& set, TargetState estimate,
                         const TargetTemplate& tmpl, double clamp_min, double clamp_max)
{
    if (!(tmpl.spread_baseline > 0.0))
        return estimate;
    const double ratio = particle_spread(set, estimate) / tmpl.spread_baseline;
    estimate.scale *= std::clamp(ratio, clamp_min, clamp_max);
    return estimate;
}

Tracker::Tracker(const ImageBuffer& first_frame, const RegionRect& init_box, TrackerConfig cfg)
    : cfg_(std::move(cfg)), rng_(cfg_.seed)
{
    if (cfg_.color_only) {
        cfg_.adapt_fusion = false;
    }
    if (!cfg_.motion.is_stationary())
        log_info("AR(2) coefficients outside the stationarity triangle (expected for constant velocity)");

    const auto box = clamp_region(init_box, first_frame.width, first_frame.height);
    if (!box)
        throw EmptyRegion();

    template_.window_w = box->w;
    template_.window_h = box->h;
    template_.tau_inv = cfg_.tau_inv;
    template_.color_initial =
        weighted_region_histogram(first_frame, *box, cfg_.quantizer, FeatureMode::Color);
    template_.color_current = template_.color_initial;
    if (cfg_.color_only) {
        template_.theta_color = 1.0;
        template_.theta_edge = 0.0;
    } else {
        const GradientField gradients = sobel_gradients(first_frame);
        template_.edge_initial = weighted_region_histogram(first_frame, *box, cfg_.quantizer,
                                                           FeatureMode::Edge, &gradients);
        template_.edge_current = template_.edge_initial;
    }

    last_estimate_ = {box->cx(), box->cy(), 1.0};

    particles_.particles.assign(
        cfg_.particle_count,
        Particle{{last_estimate_.cx, last_estimate_.cy, 1.0,
                  last_estimate_.cx, last_estimate_.cy, 1.0},
                 1.0 / cfg_.particle_count});
    particles_.normalized = true;
}

RegionRect Tracker::state_rect(double cx, double cy, double scale) const
{
    const int w = std::max(1, static_cast<int>(std::lround(template_.window_w * scale)));
    const int h = std::max(1, static_cast<int>(std::lround(template_.window_h * scale)));
    return {static_cast<int>(std::lround(cx - w / 2.0)),
            static_cast<int>(std::lround(cy - h / 2.0)), w, h};
}

void Tracker::rediffuse(const TargetState& around)
{
    std::normal_distribution<double> noise(0.0, 2.0 * cfg_.motion.noise_std_pos);
    const double w = 1.0 / cfg_.particle_count;
    for (auto& p : particles_.particles) {
        const double cx = around.cx + noise(rng_);
        const double cy = around.cy + noise(rng_);
        p.state = {cx, cy, around.scale, cx, cy, around.scale};
        p.weight = w;
    }
    particles_.normalized = true;
}

FrameResult Tracker::track_frame(const ImageBuffer& frame)
{
    const bool use_edge = !cfg_.color_only;

    std::unique_ptr<GradientField> gradients;
    if (use_edge)
        gradients = std::make_unique<GradientField>(sobel_gradients(frame));

    std::unique_ptr<IntegralHistogram> color_ih;
    std::unique_ptr<IntegralHistogram> edge_ih;
    if (cfg_.fast_histograms) {
        color_ih = std::make_unique<IntegralHistogram>(frame, cfg_.quantizer, FeatureMode::Color);
        if (use_edge)
            edge_ih = std::make_unique<IntegralHistogram>(frame, cfg_.quantizer,
                                                          FeatureMode::Edge, gradients.get());
    }

    // Particle state layout: cx, cy, scale, then the previous frame's triple.
    std::normal_distribution<double> pos_noise(0.0, cfg_.motion.noise_std_pos);
    std::normal_distribution<double> scale_noise(0.0, cfg_.motion.noise_std_scale);
    for (auto& p : particles_.particles) {
        const TargetState cur{p.state[0], p.state[1], p.state[2]};
        const TargetState prev{p.state[3], p.state[4], p.state[5]};
        // Draw in a defined order; argument evaluation order is unspecified.
        const double noise_cx = pos_noise(rng_);
        const double noise_cy = pos_noise(rng_);
        const double noise_scale = scale_noise(rng_);
        const TargetState next = propagate(cur, prev, cfg_.motion, noise_cx, noise_cy,
                                           noise_scale, cfg_.scale_min, cfg_.scale_max);
        p.state = {next.cx, next.cy, next.scale, cur.cx, cur.cy, cur.scale};
    }

    struct Score {
        double fused = 0.0;
        double d_color = 1.0;
        double rho_edge = 0.0;
    };
    auto score_state = [&](double cx, double cy, double scale) -> Score {
        Score s;
        const RegionRect rect = state_rect(cx, cy, scale);
        Histogram color;
        try {
            color = cfg_.fast_histograms
                        ? region_histogram_query(*color_ih, rect)
                        : weighted_region_histogram(frame, rect, cfg_.quantizer, FeatureMode::Color);
        } catch (const EmptyRegion&) {
            return s; // window entirely off-image
        }
        s.d_color = bhattacharyya_distance(color, template_.color_current);
        if (use_edge) {
            try {
                const Histogram edge =
                    cfg_.fast_histograms
                        ? region_histogram_query(*edge_ih, rect)
                        : weighted_region_histogram(frame, rect, cfg_.quantizer,
                                                    FeatureMode::Edge, gradients.get());
                s.rho_edge = bhattacharyya_coefficient(edge, template_.edge_current);
            } catch (const ZeroCount&) {
                s.rho_edge = 0.0; // no edge pixels: edge term at its floor
            } catch (const AllPixelsBelowEdgeThreshold&) {
                s.rho_edge = 0.0;
            }
        }
        s.fused = fused_likelihood(s.d_color, s.rho_edge, template_.theta_color,
                                   template_.theta_edge, cfg_.likelihood);
        return s;
    };

    std::vector<double> likelihoods(particles_.size());
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        const auto& st = particles_.particles[i].state;
        likelihoods[i] = score_state(st[0], st[1], st[2]).fused;
    }

    FrameResult result;
    try {
        particles_ = sis_weight_update(std::move(particles_), likelihoods);
    } catch (const AllZeroWeights&) {
        if (++consecutive_lost_ >= 2)
            throw TargetLost();
        log_info("all particle weights zero; re-diffusing around last estimate");
        rediffuse(last_estimate_);
        result.state = last_estimate_;
        result.rect = state_rect(last_estimate_.cx, last_estimate_.cy, last_estimate_.scale);
        result.diag.lost = true;
        result.diag.theta_color = template_.theta_color;
        return result;
    }
    consecutive_lost_ = 0;

    const double ess = effective_sample_size(particles_);
    const auto mean = estimate_posterior(particles_);
    TargetState estimate{mean[0], mean[1], std::clamp(mean[2], cfg_.scale_min, cfg_.scale_max)};

    bool resampled = false;
    if (ess < cfg_.resample.threshold_fraction * particles_.size()) {
        const std::uint64_t seed = rng_();
        auto weight_fn = [&](const std::vector<double>& state) {
            return score_state(state[0], state[1], state[2]).fused;
        };
        try {
            particles_ = resample_improved(particles_, cfg_.resample, weight_fn, seed);
        } catch (const NoHeavyParticles&) {
            particles_ = resample_traditional(particles_, seed);
        }
        resampled = true;
    }

    const Score at_estimate = score_state(estimate.cx, estimate.cy, estimate.scale);
    const double rho_color = 1.0 - at_estimate.d_color * at_estimate.d_color;

    if (cfg_.adapt_fusion)
        template_ = adapt_fusion_weights(template_, rho_color, at_estimate.rho_edge,
                                         cfg_.fusion_alpha);

    // Reliability gate for model adaptation. High ESS alone is not enough: a
    // flat likelihood (total occlusion, washed-out colors) also yields near-
    // uniform weights, so the template match at the estimate must be good too.
    const bool reliable = ess > particles_.size() / 2.0 && at_estimate.d_color < 0.4
                       && (!use_edge || at_estimate.rho_edge > 0.7);

    // When the weights are degenerate or the match is poor, the particle spread
    // reflects confusion rather than target size and would ratchet the scale.
    if (cfg_.adapt_window && reliable) {
        if (template_.spread_baseline > 0.0) {
            estimate = adapt_window(particles_, estimate, template_,
                                    cfg_.scale_clamp_min, cfg_.scale_clamp_max);
            estimate.scale = std::clamp(estimate.scale, cfg_.scale_min, cfg_.scale_max);
        } else {
            // Calibrate the baseline D0 from early steady-state frames. The very
            // first spread sample is skipped: the cloud starts from a single point,
            // so its spread is not yet representative and would bias the ratio up.
            // A sub-microscopic spread is floating-point residue from a
            // degenerate (single-point) cloud, not a size measurement.
            const double spread = particle_spread(particles_, estimate);
            if (spread > 1e-6 && ++spread_samples_ > 1) {
                spread_accum_ += spread;
                if (spread_samples_ - 1 == kSpreadCalibrationFrames)
                    template_.spread_baseline = spread_accum_ / kSpreadCalibrationFrames;
            }
        }
    }

    if (cfg_.adapt_template && reliable) {
        // The template is a reference model, so it always uses the kernel-weighted
        // histogram: center-weighting keeps background near the window border from
        // leaking into the model even when the estimate is slightly off.
        const RegionRect rect = state_rect(estimate.cx, estimate.cy, estimate.scale);
        try {
            const Histogram color =
                weighted_region_histogram(frame, rect, cfg_.quantizer, FeatureMode::Color);
            Histogram edge;
            if (use_edge)
                edge = weighted_region_histogram(frame, rect, cfg_.quantizer,
                                                 FeatureMode::Edge, gradients.get());
            template_ = update_template(std::move(template_), color, edge);
        } catch (const Error&) {
            log_debug("skipping template update: estimate window has no usable histogram");
        }
    }

    last_estimate_ = estimate;
    result.state = estimate;
    result.rect = state_rect(estimate.cx, estimate.cy, estimate.scale);
    result.diag.ess = ess;
    result.diag.theta_color = template_.theta_color;
    result.diag.d_color = at_estimate.d_color;
    result.diag.rho_edge = at_estimate.rho_edge;
    result.diag.resampled = resampled;
    return result;
}

} // namespace pftrack
