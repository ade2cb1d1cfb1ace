#pragma once

#include <utility>
#include <vector>

#include "rcons/model.hpp"

namespace rcons {

/// Stabilizing branch of the closed-form limit gains (scaled convention),
/// k_d > 0 and k_o >= 0.
struct LimitGains {
    double k_d = 0.0;
    double k_o = 0.0;
};

/// Both quadratic roots; the minus branches exist only for diagnostics.
struct LimitGainRoots {
    double k_d_plus = 0.0, k_d_minus = 0.0;
    double k_o_plus = 0.0, k_o_minus = 0.0; ///< evaluated at k_d_plus
};

LimitGains limit_gains(double p_bar, double nu, double r);
LimitGainRoots limit_gains_all_roots(double p_bar, double nu, double r);

/// Damped Newton on the coupled scaled gain system, started from the limit
/// gains so the returned branch is continuously connected to the stabilizing
/// one. Residuals at the solution are <= 1e-12. The s slot carries the
/// infinite-horizon value nu. Throws NonConvergence if Newton stalls.
RiccatiGains solve_finite_n_gains(const ModelParams& params);

/// The two right-hand sides of the scaled gain system, evaluated literally.
std::pair<double, double> residual_kd_ko(double k_d, double k_o, const ModelParams& params);

/// Same for the unscaled system (inputs are unscaled gains).
std::pair<double, double> residual_kd_ko_unscaled(double k_d, double k_o,
                                                  const ModelParams& params);

struct GainSchedule {
    std::vector<double> t;   ///< ascending, t[0] = 0, t.back() = T
    std::vector<double> k_d; ///< scaled
    std::vector<double> k_o;
};

/// Backward integration of the reduced finite-horizon gain equations from a
/// zero terminal condition (classical RK4; the discount rate is not part of
/// the finite-horizon system). See docs/finite_horizon_reduction.md for the
/// derivation of the reduced equations from the matrix-valued flow.
GainSchedule solve_finite_horizon_gains(const ModelParams& params, double T, double dt);

/// Infinite-horizon averaged-control coefficient; identically nu.
double solve_s(const ModelParams& params);

struct SSchedule {
    std::vector<double> t;
    std::vector<double> s;
};

/// Backward integration of -s' = (k_d + alpha(N) k_o)(1 - s/nu), s(T) = 0,
/// with constant scaled gains.
SSchedule solve_s_finite_horizon(const ModelParams& params, double k_d, double k_o,
                                 double T, double dt);

} // namespace rcons
