#ifndef PFTRACK_HISTOGRAM_HPP_
#define PFTRACK_HISTOGRAM_HPP_

#include <string>
#include <vector>

#include "pftrack/errors.hpp"

namespace pftrack {

/// Normalized M-bin feature distribution.
struct Histogram {
    std::vector<double> bins;

    std::size_t size() const { return bins.size(); }
    double sum() const;
};

/// Scales bins to sum to 1; throws ZeroCount on empty mass.
Histogram normalize(Histogram h);

/// Gaussian likelihood parameters for the two feature channels.
struct LikelihoodParams {
    double sigma_color = 0.2;
    double sigma_edge = 0.3;
};

/// rho = sum_n sqrt(p_n * q_n), in [0, 1].
double bhattacharyya_coefficient(const Histogram& p, const Histogram& q);

/// d = sqrt(1 - rho), in [0, 1].
double bhattacharyya_distance(const Histogram& p, const Histogram& q);

/// Color channel: (1/(sqrt(2*pi)*sigma)) * exp(-d^2 / (2*sigma^2)).
double color_likelihood(double distance, const LikelihoodParams& params);

/// Edge channel: (1/(sqrt(2*pi)*sigma)) * exp(-(1 - rho) / (2*sigma^2)).
/// The exponent uses (1 - rho) directly, not its square.
double edge_likelihood(double rho, const LikelihoodParams& params);

/// Debug dump as CSV lines "bin,value".
void dump_histogram_csv(const Histogram& h, const std::string& path);

} // namespace pftrack

#endif
