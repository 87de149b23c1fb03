#ifndef PFTRACK_PARTICLE_FILTER_HPP_
#define PFTRACK_PARTICLE_FILTER_HPP_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pftrack/errors.hpp"

namespace pftrack {

/// One weighted sample of the state space.
struct Particle {
    std::vector<double> state;
    double weight = 0.0;
};

/// Weighted sample cloud. Operations take a set by value and return a new one.
struct ParticleSet {
    std::vector<Particle> particles;
    bool normalized = false;

    std::size_t size() const { return particles.size(); }
    std::size_t state_dim() const { return particles.empty() ? 0 : particles.front().state.size(); }
};

/// Tuning knobs for the classified resampling scheme.
struct ResampleConfig {
    double threshold_fraction = 2.0 / 3.0; // resample when ESS < fraction * N
    double step_coefficient = 0.4;         // K in the linear move
    double low_factor = 0.5;               // w_l = low_factor * mean weight
    double high_factor = 2.0;              // w_h = high_factor * mean weight
    int max_halvings = 3;
    bool weighted_attractor = false;       // pick attractors by weight instead of uniformly
};

/// Scales weights to sum to 1. Throws AllZeroWeights if there is no support.
ParticleSet normalize_weights(ParticleSet set);

/// 1 / sum(w_i^2) on normalized weights; equals N when uniform, 1 when degenerate.
double effective_sample_size(const ParticleSet& set);

/// Sequential importance sampling step: w_i <- w_i * likelihood_i, renormalized.
ParticleSet sis_weight_update(ParticleSet set, const std::vector<double>& likelihoods);

/// Weighted mean of particle states.
std::vector<double> estimate_posterior(const ParticleSet& set);

/// Multinomial resampling; output weights are all 1/N.
ParticleSet resample_traditional(const ParticleSet& set, std::uint64_t rng_seed);

/// Splits indices into class A (weight <= w_l or >= w_h) and class B (between).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
classify_particles(const ParticleSet& set, const ResampleConfig& cfg);

using WeightFn = std::function<double(const std::vector<double>&)>;

/// Classified resampling: sorts ascending by weight, keeps class B, moves each
/// light class-A particle toward a randomly chosen heavy class-A attractor by
/// x_n = x_s + K*L*(x_a - x_s) with L = (1/|A|)^(1/m). If the moved particle
/// scores below the original weight, L is halved and the move retried, up to
/// max_halvings times, then the particle becomes a copy of the attractor.
/// Throws NoHeavyParticles when lights exist but no attractor does.
ParticleSet resample_improved(const ParticleSet& set, const ResampleConfig& cfg,
                              const WeightFn& weight_fn, std::uint64_t rng_seed);

} // namespace pftrack

#endif
