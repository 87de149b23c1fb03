#include "pftrack/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pftrack {

namespace {

void require_normalized(const ParticleSet& set)
{
    if (!set.normalized)
        throw NotNormalized();
}

} // namespace

ParticleSet normalize_weights(ParticleSet set)
{
    double sum = 0.0;
    for (const auto& p : set.particles)
        sum += p.weight;
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw AllZeroWeights();
    for (auto& p : set.particles)
        p.weight /= sum;
    set.normalized = true;
    return set;
}

double effective_sample_size(const ParticleSet& set)
{
    require_normalized(set);
    double sum_sq = 0.0;
    for (const auto& p : set.particles)
        sum_sq += p.weight * p.weight;
    return 1.0 / sum_sq;
}

ParticleSet sis_weight_update(ParticleSet set, const std::vector<double>& likelihoods)
{
    if (likelihoods.size() != set.size())
        throw LengthMismatch("likelihood vector length does not match particle count");
    for (std::size_t i = 0; i < set.size(); ++i)
        set.particles[i].weight *= likelihoods[i];
    set.normalized = false;
    return normalize_weights(std::move(set));
}

std::vector<double> estimate_posterior(const ParticleSet& set)
{
    require_normalized(set);
    std::vector<double> mean(set.state_dim(), 0.0);
    for (const auto& p : set.particles)
        for (std::size_t d = 0; d < mean.size(); ++d)
            mean[d] += p.weight * p.state[d];
    return mean;
}

ParticleSet resample_traditional(const ParticleSet& set, std::uint64_t rng_seed)
{
    require_normalized(set);
    const std::size_t n = set.size();

    std::vector<double> cumsum(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += set.particles[i].weight;
        cumsum[i] = acc;
    }
    cumsum.back() = 1.0;

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ParticleSet out;
    out.particles.reserve(n);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = unif(rng);
        const auto it = std::lower_bound(cumsum.begin(), cumsum.end(), u);
        const std::size_t idx = static_cast<std::size_t>(it - cumsum.begin());
        out.particles.push_back({set.particles[idx].state, w});
    }
    out.normalized = true;
    return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
classify_particles(const ParticleSet& set, const ResampleConfig& cfg)
{
    require_normalized(set);
    const double mean = 1.0 / static_cast<double>(set.size());
    const double w_low = cfg.low_factor * mean;
    const double w_high = cfg.high_factor * mean;

    std::vector<std::size_t> class_a;
    std::vector<std::size_t> class_b;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double w = set.particles[i].weight;
        if (w <= w_low || w >= w_high)
            class_a.push_back(i);
        else
            class_b.push_back(i);
    }
    return {std::move(class_a), std::move(class_b)};
}

ParticleSet resample_improved(const ParticleSet& set, const ResampleConfig& cfg,
                              const WeightFn& weight_fn, std::uint64_t rng_seed)
{
    require_normalized(set);

    ParticleSet sorted = set;
    std::stable_sort(sorted.particles.begin(), sorted.particles.end(),
                     [](const Particle& a, const Particle& b) { return a.weight < b.weight; });

    const auto [class_a, class_b] = classify_particles(sorted, cfg);
    (void)class_b;
    if (class_a.empty())
        return sorted;

    const double mean = 1.0 / static_cast<double>(sorted.size());
    const double w_high = cfg.high_factor * mean;

    std::vector<std::size_t> heavy;
    std::vector<std::size_t> light;
    for (std::size_t idx : class_a) {
        if (sorted.particles[idx].weight >= w_high)
            heavy.push_back(idx);
        else
            light.push_back(idx);
    }
    if (light.empty())
        return sorted;
    if (heavy.empty())
        throw NoHeavyParticles();

    const std::size_t m = sorted.state_dim();
    const double shrink =
        std::pow(1.0 / static_cast<double>(class_a.size()), 1.0 / static_cast<double>(m));

    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<std::size_t> pick_uniform(0, heavy.size() - 1);
    std::vector<double> heavy_cum;
    heavy_cum.reserve(heavy.size());
    double acc = 0.0;
    for (std::size_t hidx : heavy) {
        acc += sorted.particles[hidx].weight;
        heavy_cum.push_back(acc);
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto pick_attractor = [&]() {
        if (!cfg.weighted_attractor)
            return heavy[pick_uniform(rng)];
        const double u = unif(rng) * heavy_cum.back();
        const auto it = std::lower_bound(heavy_cum.begin(), heavy_cum.end(), u);
        return heavy[static_cast<std::size_t>(it - heavy_cum.begin())];
    };

    for (std::size_t s : light) {
        const std::size_t a = pick_attractor();
        const std::vector<double>& x_a = sorted.particles[a].state;
        const std::vector<double>& x_s = sorted.particles[s].state;
        const double original_weight = sorted.particles[s].weight;

        std::vector<double> moved(m);
        double step = cfg.step_coefficient * shrink;
        bool accepted = false;
        for (int attempt = 0; attempt <= cfg.max_halvings; ++attempt) {
            for (std::size_t d = 0; d < m; ++d)
                moved[d] = x_s[d] + step * (x_a[d] - x_s[d]);
            if (weight_fn(moved) >= original_weight) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            moved = x_a; // give up on the move; clone the attractor instead
        sorted.particles[s].state = std::move(moved);
    }

    // Like the traditional scheme, the resampled cloud restarts from equal weights.
    const double uniform = 1.0 / static_cast<double>(sorted.size());
    for (auto& p : sorted.particles)
        p.weight = uniform;
    sorted.normalized = true;
    return sorted;
}

} // namespace pftrack
