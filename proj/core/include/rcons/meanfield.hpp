#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rcons/gpc.hpp"
#include "rcons/sim.hpp"

namespace rcons {

/// Density histogram: bin masses integrate to one.
struct Histogram {
    std::vector<double> edges; ///< bins + 1 ascending values
    std::vector<double> mass;  ///< density value per bin

    double bin_width() const { return edges[1] - edges[0]; }
    double integral() const;
    double first_moment() const; ///< integral of x * density over the bins
};

/// Density-normalized counts; samples outside the range are clipped into the
/// end bins so no mass is lost. Throws EmptyInput on an empty sample set.
Histogram histogram(const std::vector<double>& samples, int bins, std::pair<double, double> range);

struct DensityPair {
    std::vector<double> mean; ///< per bin
    std::vector<double> std;  ///< per bin, >= 0
};

/// Input-averaged density and its standard deviation over a family of
/// histograms evaluated at quadrature nodes, combined with the given
/// probability weights (which sum to one).
DensityPair density_moments(const std::vector<Histogram>& per_node,
                            const std::vector<double>& weights);

struct DensityMoments {
    std::vector<double> times;
    std::vector<double> edges;
    std::vector<std::vector<double>> mean_density; ///< [snapshot][bin]
    std::vector<std::vector<double>> std_density;  ///< [snapshot][bin]
    std::vector<double> agent_mean;                ///< particle mean per snapshot
    long clipped = 0;                              ///< realizations outside the bin range
};

/// Particle ensemble with spectral expansion of the input space: evolves the
/// projected coefficient system for n_agents particles, evaluates the state
/// at every tensor quadrature node per snapshot, histograms each realization
/// and combines them with the product quadrature weights. One-dimensional
/// states only.
DensityMoments run_mc_sg(const ModelParams& params, const UncertaintySpec& unc,
                         const GpcBasis& basis, const RiccatiGains& gains, ControlKind control,
                         const AgentStates& v0, double T, double dt, int bins, int quad_points,
                         std::uint64_t seed, int snapshots);

/// Bin range used by run_mc_sg: the initial ensemble extended by three times
/// its spread on both sides.
std::pair<double, double> density_range(const AgentStates& v0);

} // namespace rcons
