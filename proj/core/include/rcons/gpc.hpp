#pragma once

#include <vector>

#include "rcons/model.hpp"
#include "rcons/quadrature.hpp"

namespace rcons {

/// Tensor-product orthogonal polynomial basis matched to the input
/// distributions: probabilists' Hermite under Gaussian inputs, Legendre under
/// uniform ones, both pulled back affinely to their canonical domain.
struct GpcBasis {
    UncertaintySpec components;
    int order = 0; ///< max degree per input dimension

    int dims() const { return static_cast<int>(components.size()); }

    /// Phi_k^{(j)}(theta_j) by three-term recurrence.
    double eval(int j, int k, double theta_j) const;
};

/// Flat multi-index set {0..M}^Z. Index j varies fastest.
struct MultiIndexSet {
    int z = 0;
    int order = 0;

    int size() const {
        int n = 1;
        for (int j = 0; j < z; ++j) n *= order + 1;
        return n;
    }
    void decode(int flat, int* out) const {
        for (int j = 0; j < z; ++j) {
            out[j] = flat % (order + 1);
            flat /= order + 1;
        }
    }
};

/// Chaos coefficients indexed (agent, multi-index, state dimension).
struct GpcCoefficients {
    int n_agents = 0;
    int n_modes = 0;
    int dim = 0;
    std::vector<double> data;

    GpcCoefficients() = default;
    GpcCoefficients(int n, int modes, int d)
        : n_agents(n), n_modes(modes), dim(d),
          data(static_cast<std::size_t>(n) * modes * d, 0.0) {}

    double& at(int agent, int mode, int k) {
        return data[(static_cast<std::size_t>(agent) * n_modes + mode) * dim + k];
    }
    double at(int agent, int mode, int k) const {
        return data[(static_cast<std::size_t>(agent) * n_modes + mode) * dim + k];
    }
};

/// Deterministic initial data: only the all-zeros multi-index is populated.
GpcCoefficients project_initial(const AgentStates& v0, const GpcBasis& basis);

/// Constant-in-time pieces of the projected dynamics, computed once per run.
struct GpcProjection {
    MultiIndexSet modes;
    std::vector<double> forcing;      ///< per mode, already divided by E[Phi^2] products
    std::vector<double> control_mask; ///< per mode: prod m0 / prod m2 (1 on mode 0, else ~0)
    double input_mean_sum = 0.0;
};

GpcProjection build_projection(const GpcBasis& basis, const BasisMoments& moments,
                               const UncertaintySpec& unc);

/// d/dt of the coefficients under the state feedback law; every multi-index
/// evolves under the same closed-loop consensus operator plus its forcing.
void rhs_feedback_into(const GpcCoefficients& c, const ModelParams& params,
                       const RiccatiGains& gains, const GpcProjection& proj,
                       GpcCoefficients& out);

/// d/dt under the averaged control: interaction only on every mode, the
/// control acting through the zero multi-index alone.
void rhs_averaged_into(const GpcCoefficients& c, const ModelParams& params,
                       const RiccatiGains& gains, double s, const GpcProjection& proj,
                       GpcCoefficients& out);

/// Allocation-free cores used by the integrators; layouts as GpcCoefficients.
void rhs_feedback_raw(const double* c, double* out, int n_agents, int n_modes, int dim,
                      const ModelParams& params, const RiccatiGains& gains,
                      const GpcProjection& proj);
void rhs_averaged_raw(const double* c, double* out, int n_agents, int n_modes, int dim,
                      const ModelParams& params, const RiccatiGains& gains, double s,
                      const GpcProjection& proj);

GpcCoefficients rhs_feedback(const GpcCoefficients& c, const ModelParams& params,
                             const RiccatiGains& gains, const GpcProjection& proj);
GpcCoefficients rhs_averaged(const GpcCoefficients& c, const ModelParams& params,
                             const RiccatiGains& gains, double s, const GpcProjection& proj);

struct GpcMoments {
    AgentStates mean;
    AgentStates variance;
};

/// Mean is the zero mode; variance the weighted sum of squared coefficients,
/// the weights being the products of E[Phi^2] over dimensions.
GpcMoments reconstruct_moments(const GpcCoefficients& c, const BasisMoments& moments);

/// Tensor contraction of the coefficients against the basis at theta.
/// theta is a flat Z x dim array; for dim = 1 this is just the Z draws.
AgentStates evaluate_realization(const GpcCoefficients& c, const std::vector<double>& theta,
                                 const GpcBasis& basis);

} // namespace rcons
