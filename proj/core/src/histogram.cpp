#include "pftrack/histogram.hpp"

#include <cmath>
#include <fstream>

namespace pftrack {

double Histogram::sum() const
{
    double s = 0.0;
    for (double b : bins)
        s += b;
    return s;
}

Histogram normalize(Histogram h)
{
    const double s = h.sum();
    if (!(s > 0.0))
        throw ZeroCount();
    for (double& b : h.bins)
        b /= s;
    return h;
}

double bhattacharyya_coefficient(const Histogram& p, const Histogram& q)
{
    if (p.size() != q.size())
        throw DimensionMismatch("histogram bin counts differ");
    double rho = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n)
        rho += std::sqrt(p.bins[n] * q.bins[n]);
    return std::min(rho, 1.0);
}

double bhattacharyya_distance(const Histogram& p, const Histogram& q)
{
    return std::sqrt(1.0 - bhattacharyya_coefficient(p, q));
}

double color_likelihood(double distance, const LikelihoodParams& params)
{
    const double s = params.sigma_color;
    return std::exp(-distance * distance / (2.0 * s * s)) / (std::sqrt(2.0 * M_PI) * s);
}

double edge_likelihood(double rho, const LikelihoodParams& params)
{
    const double s = params.sigma_edge;
    return std::exp(-(1.0 - rho) / (2.0 * s * s)) / (std::sqrt(2.0 * M_PI) * s);
}

void dump_histogram_csv(const Histogram& h, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoFailure("cannot open " + path + " for writing");
    out << "bin,value\n";
    for (std::size_t n = 0; n < h.size(); ++n)
        out << n << "," << h.bins[n] << "\n";
}

} // namespace pftrack
