#pragma once

#include <string>
#include <vector>

#include "rcons/errors.hpp"

namespace rcons {

/// Scalars defining the agent system.
struct ModelParams {
    int n_agents = 2;   ///< N
    int dim = 1;        ///< d
    double p_bar = 0.0; ///< interaction strength, >= 0
    double nu = 1.0;    ///< control penalization, > 0
    double r = 0.0;     ///< discount rate, >= 0
    int z = 1;          ///< number of additive random inputs

    void validate() const;
};

/// One additive random input channel.
struct Uncertainty {
    enum class Kind { Gaussian, Uniform };
    Kind kind = Kind::Gaussian;
    double mu = 0.0, sigma2 = 1.0; ///< Gaussian parameters
    double a = -1.0, b = 1.0;      ///< Uniform interval

    static Uncertainty gaussian(double mu, double sigma2);
    static Uncertainty uniform(double a, double b);

    double mean() const;
    double variance() const;
    /// Scale of the degree-one canonical variable: sigma for Gaussian,
    /// half-width for Uniform.
    double linear_scale() const;
};

using UncertaintySpec = std::vector<Uncertainty>;

void validate_uncertainty(const UncertaintySpec& unc, const ModelParams& params);

/// All-to-all attraction kernel; rows sum to zero by construction.
struct InteractionMatrix {
    double a_d = 0.0; ///< diagonal entry
    double a_o = 0.0; ///< off-diagonal entry
    int n = 0;
};

/// N x dim agent states stored row-major per agent.
struct AgentStates {
    int n_agents = 0;
    int dim = 0;
    std::vector<double> values;

    AgentStates() = default;
    AgentStates(int n, int d)
        : n_agents(n), dim(d), values(static_cast<std::size_t>(n) * d, 0.0) {}

    double& at(int agent, int k) { return values[static_cast<std::size_t>(agent) * dim + k]; }
    double at(int agent, int k) const { return values[static_cast<std::size_t>(agent) * dim + k]; }
};

/// Reduced feedback gain pair plus the averaged-control coefficient s,
/// stored in the scaled convention (k_d scaled by N, k_o by N^2).
struct RiccatiGains {
    double k_d = 0.0;
    double k_o = 0.0;
    double s = 0.0;
};

InteractionMatrix build_interaction_matrix(const ModelParams& params);

/// State feedback u_i = -(1/nu) [(k_d - k_o/N) v_i + (k_o/N) sum_j v_j],
/// acting per state dimension.
AgentStates feedback_control(const AgentStates& v, const RiccatiGains& gains,
                             const ModelParams& params);

/// Same written with the self term absorbed into the diagonal,
/// u_i = -(1/nu) [k_d v_i + (k_o/N) sum_{j != i} v_j]. Agrees with
/// feedback_control identically; kept as the explicit pairwise form.
AgentStates feedback_control_pairwise(const AgentStates& v, const RiccatiGains& gains,
                                      const ModelParams& params);

/// feedback_control with the input means subtracted from every agent.
AgentStates feedback_control_corrected(const AgentStates& v, const RiccatiGains& gains,
                                       const ModelParams& params, const UncertaintySpec& unc);

/// Deterministic control computed from the expected state; the input-mean
/// term carries the coefficient s/nu (s = nu on the infinite horizon).
AgentStates averaged_control(const AgentStates& mean_state, const RiccatiGains& gains,
                             const ModelParams& params, const UncertaintySpec& unc);

/// dv_i/dt = (p_bar/N) sum_j (v_j - v_i) + u_i + sum_k theta_k.
/// theta is a flat Z x dim array (one draw per channel and state dimension).
AgentStates drift(const AgentStates& v, const std::vector<double>& theta,
                  const AgentStates& control, const ModelParams& params);

} // namespace rcons
