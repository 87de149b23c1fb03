#ifndef PFTRACK_UNGM_HPP_
#define PFTRACK_UNGM_HPP_

#include <cstdint>
#include <vector>

#include "pftrack/particle_filter.hpp"

namespace pftrack {

/// Univariate nonstationary growth model benchmark settings.
struct UngmParams {
    int particle_count = 100;
    int steps = 50;
    double process_noise_std = 3.1622776601683795; // sqrt(10)
    double measurement_noise_var = 1.0;
    double step_coefficient = 0.4;
    int runs = 50;
    std::uint64_t seed = 0;
    // Control switch: run the traditional strategy on both sides. With equal
    // seeds the two result columns must then match exactly.
    bool traditional_both = false;
};

/// One paired simulation: both filters see the same trajectory and observations.
struct RunResult {
    std::vector<double> true_states;
    std::vector<double> estimates_trpf;
    std::vector<double> estimates_irpf;
    double rmse_trpf = 0.0;
    double rmse_irpf = 0.0;
};

double ungm_transition(double x_prev, int n, double noise);
double ungm_observe(double x, double noise);
double ungm_likelihood(double y_observed, double x_particle, double var);

double rmse(const std::vector<double>& truth, const std::vector<double>& estimate);

/// Runs params.runs paired TRPF/IRPF simulations, fully determined by the seed.
std::vector<RunResult> run_comparison(const UngmParams& params);

} // namespace pftrack

#endif
