#pragma once

#include <cstdint>
#include <vector>

#include "rcons/gpc.hpp"
#include "rcons/model.hpp"

namespace rcons {

enum class ControlKind { Feedback, FeedbackCorrected, Averaged };

struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;
    void resize(std::size_t n) {
        k1.resize(n); k2.resize(n); k3.resize(n); k4.resize(n); tmp.resize(n);
    }
};

/// Classical fourth-order step, generic over flat state containers.
/// rhs(y, dy) writes the derivative of y into dy.
template <class Rhs>
void rk4_step_inplace(std::vector<double>& y, double dt, Rhs&& rhs, Rk4Workspace& ws) {
    const std::size_t n = y.size();
    ws.resize(n);
    rhs(y, ws.k1);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k1[i];
    rhs(ws.tmp, ws.k2);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = y[i] + 0.5 * dt * ws.k2[i];
    rhs(ws.tmp, ws.k3);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = y[i] + dt * ws.k3[i];
    rhs(ws.tmp, ws.k4);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        y[i] += w * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

/// Value-returning form; rhs maps a state to its derivative.
template <class Rhs>
std::vector<double> rk4_step(const std::vector<double>& y, Rhs&& rhs, double dt) {
    std::vector<double> out = y;
    Rk4Workspace ws;
    rk4_step_inplace(out, dt, [&](const std::vector<double>& s, std::vector<double>& ds) {
        ds = rhs(s);
    }, ws);
    return out;
}

struct MomentSeries {
    std::vector<double> times;
    std::vector<AgentStates> mean;       ///< per snapshot
    std::vector<AgentStates> variance;   ///< per snapshot
    std::vector<std::vector<double>> band_low;  ///< [snapshot][dim]
    std::vector<std::vector<double>> band_high; ///< [snapshot][dim]
    /// standard error of the agent-averaged mean; filled by sampled runs only
    std::vector<std::vector<double>> mean_se;

    /// agent-averaged mean at snapshot t for dimension k
    double agent_mean(int t, int k) const {
        double s = 0.0;
        for (int i = 0; i < mean[t].n_agents; ++i) s += mean[t].at(i, k);
        return s / mean[t].n_agents;
    }
    /// band width at snapshot t for dimension k
    double band_width(int t, int k) const { return band_high[t][k] - band_low[t][k]; }
};

/// Shaded-region convention: agent-averaged mean -/+ the max over agents of
/// the per-agent standard deviation, per state dimension.
void confidence_band(MomentSeries& series);

/// Integrates the projected coefficient system and reconstructs moments at
/// snapshots+1 equispaced times (including t = 0 and t = T).
MomentSeries run_micro_sg(const ModelParams& params, const UncertaintySpec& unc,
                          const GpcBasis& basis, const RiccatiGains& gains, ControlKind control,
                          const AgentStates& v0, double T, double dt, int snapshots,
                          int quad_points);

/// Monte-Carlo companion: one constant input draw per trajectory, empirical
/// moments across trajectories. Deterministic for a fixed seed regardless of
/// the worker count.
MomentSeries run_micro_sampled(const ModelParams& params, const UncertaintySpec& unc,
                               const RiccatiGains& gains, ControlKind control,
                               const AgentStates& v0, double T, double dt, int n_samples,
                               std::uint64_t seed, int snapshots);

} // namespace rcons
