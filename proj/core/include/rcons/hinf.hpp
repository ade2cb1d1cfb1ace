#pragma once

#include <optional>
#include <vector>

#include "rcons/linalg.hpp"
#include "rcons/model.hpp"

namespace rcons {

/// Structured robustness certificate for the consensus feedback law.
struct HinfCertificate {
    double gamma = 0.0;
    double c_n = 0.0;
    double x_d = 0.0;          ///< diagonal entry of the certificate matrix
    double x_o_tilde = 0.0;    ///< scaled off-diagonal entry (zero branch)
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    bool positive_definite = false;
    double residual_norm = 0.0; ///< largest absolute entry of the dense residual
};

/// c_N = p_bar + (k_d - k_o/N)/nu with scaled gains.
double compute_c_n(const ModelParams& params, const RiccatiGains& gains);

/// Closed-form lower bound sqrt(nu) / (sqrt((p_bar + r/2)^2 nu + 1) - r sqrt(nu)/2).
/// Throws DegenerateBound on a non-positive denominator.
double gamma_lower_bound(double p_bar, double nu, double r);

/// Solves lambda^2 - 2 gamma c_N lambda + 1 = 0, builds the diagonal
/// certificate from the smaller root, and evaluates its residual.
/// Throws InfeasibleGamma when gamma < 1/c_N.
HinfCertificate certify(const ModelParams& params, const RiccatiGains& gains, double gamma);

/// Largest absolute entry of
///   A^T X + X A - (K^T X + X K)/nu + X X / gamma + I/gamma
/// with X built densely from (x_d, x_o_tilde/sqrt(N)). The residual matrix of
/// the diagonal certificate has every entry equal to 2 lambda (p_bar - k_o/nu)/N,
/// so the entrywise norm is the one that decays like 1/N; any induced norm of
/// this rank-one defect stays O(1).
double are_residual(double x_d, double x_o_tilde, const ModelParams& params,
                    const RiccatiGains& gains, double gamma);

struct StateSpaceSystem {
    Mat a, b, c, d;
};

/// Closed-loop consensus system: A - K/nu driven by a ones input matrix with
/// identity output.
StateSpaceSystem make_consensus_system(const ModelParams& params, const RiccatiGains& gains);

std::vector<double> log_omega_grid(double lo, double hi, int n);

/// Grid maximum of the largest singular value of D + C (i w I - A)^{-1} B,
/// tightened by golden-section refinement around the argmax. Always also
/// evaluates w = 0 and the w -> inf limit; a lower bound of the true norm.
/// Throws UnstableSystem if A has an eigenvalue with non-negative real part.
double hinf_norm_sweep(const StateSpaceSystem& sys, const std::vector<double>& omega_grid);

/// Strict bounded-real block test: largest eigenvalue of
///   [[A^T X + X A, X B], [B^T X, -gamma I]] + (1/gamma) [C D]^T [C D]  <  0.
bool lmi_feasible(const StateSpaceSystem& sys, double gamma, const Mat& x);

/// Frobenius norm of
///   A^T X + X A - (X B + C^T D) (-gamma I + D^T D/gamma)^{-1} (B^T X + D^T C)
///   + C^T C / gamma.
/// Throws SingularMiddleBlock when the middle block cannot be inverted.
double are_residual_generic(const StateSpaceSystem& sys, double gamma, const Mat& x);

/// Newton (Kleinman) iteration for the bounded-real Riccati equation from
/// X = eps I; each step solves a small Lyapunov equation by vectorization.
/// Returns nullopt when the iteration fails to converge, which is the
/// expected outcome for gamma below the transfer norm. Note: the cross term
/// here uses C^T D / gamma, the exact Schur complement of the block test
/// above; see docs/numerics.md.
std::optional<Mat> solve_bounded_real_are(const StateSpaceSystem& sys, double gamma,
                                          int max_iter = 200);

/// Shifts a boundary Riccati solution into the strict interior of the block
/// inequality by a scaled Lyapunov step.
Mat lmi_interior_candidate(const StateSpaceSystem& sys, double gamma, const Mat& x_are);

} // namespace rcons
