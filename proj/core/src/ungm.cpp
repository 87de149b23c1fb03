#include "pftrack/ungm.hpp"

#include <cmath>
#include <random>

namespace pftrack {

double ungm_transition(double x_prev, int n, double noise)
{
    return 0.5 * x_prev + 25.0 * x_prev / (1.0 + x_prev * x_prev)
         + 8.0 * std::cos(1.2 * (n - 1)) + noise;
}

double ungm_observe(double x, double noise)
{
    return x * x / 20.0 + noise;
}

double ungm_likelihood(double y_observed, double x_particle, double var)
{
    const double innovation = y_observed - x_particle * x_particle / 20.0;
    return std::exp(-innovation * innovation / (2.0 * var))
         / std::sqrt(2.0 * M_PI * var);
}

double rmse(const std::vector<double>& truth, const std::vector<double>& estimate)
{
    if (truth.size() != estimate.size() || truth.empty())
        throw LengthMismatch("rmse requires equal nonzero-length sequences");
    double sum = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        const double e = truth[k] - estimate[k];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(truth.size()));
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag)
{
    // splitmix64 step over seed + tag
    std::uint64_t z = seed + tag * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class Strategy { Traditional, Improved };

std::vector<double> run_filter(const UngmParams& p,
                               const std::vector<double>& observations,
                               const ParticleSet& initial,
                               Strategy strategy,
                               std::uint64_t filter_seed)
{
    ResampleConfig cfg;
    cfg.step_coefficient = p.step_coefficient;

    ParticleSet set = initial;
    const double ess_threshold = cfg.threshold_fraction * static_cast<double>(set.size());

    std::vector<double> estimates;
    estimates.reserve(observations.size());

    for (std::size_t step = 0; step < observations.size(); ++step) {
        const int n = static_cast<int>(step) + 1;
        // Per-step derived streams keep the two strategies' process noise
        // identical even after their resampling histories diverge.
        std::mt19937_64 rng(mix_seed(filter_seed, step));
        std::normal_distribution<double> process_noise(0.0, p.process_noise_std);
        for (auto& particle : set.particles)
            particle.state[0] = ungm_transition(particle.state[0], n, process_noise(rng));

        const double y = observations[step];
        std::vector<double> likelihoods(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            const double l = ungm_likelihood(y, set.particles[i].state[0], p.measurement_noise_var);
            likelihoods[i] = std::max(l, 1e-300); // keep support when the filter strays far
        }
        set = sis_weight_update(std::move(set), likelihoods);
        estimates.push_back(estimate_posterior(set)[0]);

        if (effective_sample_size(set) < ess_threshold) {
            const std::uint64_t resample_seed = mix_seed(filter_seed, 0x8000ULL + step);
            if (strategy == Strategy::Traditional) {
                set = resample_traditional(set, resample_seed);
            } else {
                auto score = [&](const std::vector<double>& state) {
                    return ungm_likelihood(y, state[0], p.measurement_noise_var);
                };
                try {
                    set = resample_improved(set, cfg, score, resample_seed);
                } catch (const NoHeavyParticles&) {
                    set = resample_traditional(set, resample_seed);
                }
            }
        }
    }
    return estimates;
}

} // namespace

std::vector<RunResult> run_comparison(const UngmParams& params)
{
    std::vector<RunResult> results;
    results.reserve(params.runs);

    for (int run = 0; run < params.runs; ++run) {
        std::mt19937_64 world_rng(mix_seed(params.seed, static_cast<std::uint64_t>(run)));
        std::normal_distribution<double> process_noise(0.0, params.process_noise_std);
        std::normal_distribution<double> measure_noise(0.0, std::sqrt(params.measurement_noise_var));
        std::normal_distribution<double> prior(0.0, 1.0);

        RunResult r;
        r.true_states.reserve(params.steps);
        std::vector<double> observations;
        observations.reserve(params.steps);

        double x = 0.0;
        for (int n = 1; n <= params.steps; ++n) {
            x = ungm_transition(x, n, process_noise(world_rng));
            r.true_states.push_back(x);
            observations.push_back(ungm_observe(x, measure_noise(world_rng)));
        }

        ParticleSet initial;
        initial.particles.reserve(params.particle_count);
        const double w = 1.0 / static_cast<double>(params.particle_count);
        for (int i = 0; i < params.particle_count; ++i)
            initial.particles.push_back({{prior(world_rng)}, w});
        initial.normalized = true;

        // Both filters share the observation sequence, the initial cloud and
        // the filter seed, so identical strategies give identical outputs.
        const std::uint64_t filter_seed = mix_seed(params.seed, 0x10000ULL + run);
        const Strategy second = params.traditional_both ? Strategy::Traditional : Strategy::Improved;
        r.estimates_trpf = run_filter(params, observations, initial, Strategy::Traditional, filter_seed);
        r.estimates_irpf = run_filter(params, observations, initial, second, filter_seed);
        r.rmse_trpf = rmse(r.true_states, r.estimates_trpf);
        r.rmse_irpf = rmse(r.true_states, r.estimates_irpf);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace pftrack
