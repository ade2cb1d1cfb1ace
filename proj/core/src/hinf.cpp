#include "rcons/hinf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcons/parallel.hpp"

namespace rcons {

double compute_c_n(const ModelParams& params, const RiccatiGains& gains) {
    return params.p_bar + (gains.k_d - gains.k_o / params.n_agents) / params.nu;
}

double gamma_lower_bound(double p_bar, double nu, double r) {
    if (!(nu > 0.0)) throw ConfigError("gamma_lower_bound: nu must be > 0");
    const double pt = p_bar + 0.5 * r;
    const double sn = std::sqrt(nu);
    const double denom = std::sqrt(pt * pt * nu + 1.0) - 0.5 * r * sn;
    if (!(denom > 0.0)) throw DegenerateBound("gamma bound denominator not positive");
    return sn / denom;
}

namespace {

Mat dense_interaction(const ModelParams& params) {
    const InteractionMatrix im = build_interaction_matrix(params);
    const int n = params.n_agents;
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = i == j ? im.a_d : im.a_o;
    return a;
}

Mat dense_gain(const ModelParams& params, const RiccatiGains& gains) {
    const int n = params.n_agents;
    Mat k(n, n);
    const double off = gains.k_o / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = i == j ? gains.k_d : off;
    return k;
}

} // namespace

HinfCertificate certify(const ModelParams& params, const RiccatiGains& gains, double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("certify: gamma must be > 0");
    HinfCertificate cert;
    cert.gamma = gamma;
    cert.c_n = compute_c_n(params, gains);
    const double gc = gamma * cert.c_n;
    if (cert.c_n > 0.0 && gc < 1.0) throw InfeasibleGamma(gamma, 1.0 / cert.c_n);
    if (cert.c_n <= 0.0) throw InfeasibleGamma(gamma, std::numeric_limits<double>::infinity());
    const double disc = std::sqrt(std::max(gc * gc - 1.0, 0.0));
    cert.lambda_plus = gc + disc;
    cert.lambda_minus = gc - disc;
    cert.x_o_tilde = 0.0;
    cert.x_d = cert.lambda_minus; // smaller root keeps the certificate well conditioned
    cert.positive_definite = cert.c_n > 0.0 && gamma >= 1.0 / cert.c_n;
    cert.residual_norm = are_residual(cert.x_d, cert.x_o_tilde, params, gains, gamma);
    return cert;
}

double are_residual(double x_d, double x_o_tilde, const ModelParams& params,
                    const RiccatiGains& gains, double gamma) {
    const int n = params.n_agents;
    const Mat a = dense_interaction(params);
    const Mat k = dense_gain(params, gains);
    Mat x(n, n);
    const double x_off = x_o_tilde / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = i == j ? x_d : x_off;

    Mat res = a.transpose() * x + x * a - (1.0 / params.nu) * (k.transpose() * x + x * k) +
              (1.0 / gamma) * (x * x);
    for (int i = 0; i < n; ++i) res(i, i) += 1.0 / gamma;
    return res.max_abs();
}

StateSpaceSystem make_consensus_system(const ModelParams& params, const RiccatiGains& gains) {
    StateSpaceSystem sys;
    const Mat a = dense_interaction(params);
    const Mat k = dense_gain(params, gains);
    sys.a = a - (1.0 / params.nu) * k;
    sys.b = Mat::ones(params.n_agents, params.z);
    sys.c = Mat::identity(params.n_agents);
    sys.d = Mat(params.n_agents, params.z);
    return sys;
}

std::vector<double> log_omega_grid(double lo, double hi, int n) {
    std::vector<double> grid(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        grid[i] = std::pow(10.0, llo + (lhi - llo) * i / static_cast<double>(n - 1));
    return grid;
}

double hinf_norm_sweep(const StateSpaceSystem& sys, const std::vector<double>& omega_grid) {
    if (omega_grid.empty()) throw ConfigError("hinf_norm_sweep: empty grid");
    if (spectral_abscissa(sys.a) >= 0.0)
        throw UnstableSystem("hinf_norm_sweep: state matrix is not Hurwitz");

    auto gain = [&](double w) {
        return transfer_sigma_max(sys.a, sys.b, sys.c, sys.d, w);
    };

    std::vector<double> grid = omega_grid;
    grid.push_back(0.0);
    std::vector<double> vals(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { vals[i] = gain(grid[i]); });

    std::size_t arg = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[arg]) arg = i;
    double best = vals[arg];

    // w -> inf limit
    {
        const SymEigen se = sym_eigen(sys.d.transpose() * sys.d, false);
        if (!se.values.empty()) best = std::max(best, std::sqrt(std::max(se.values.back(), 0.0)));
    }

    // golden-section polish around the grid argmax (grid stays sorted except
    // for the appended zero, so neighbours are looked up in the original grid)
    if (arg < omega_grid.size()) {
        const double w0 = arg > 0 ? omega_grid[arg - 1] : omega_grid[arg] * 0.25;
        const double w1 = arg + 1 < omega_grid.size() ? omega_grid[arg + 1] : omega_grid[arg] * 4.0;
        double a = w0, b = w1;
        const double gr = 0.61803398874989484820;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = gain(c), fd = gain(d);
        for (int it = 0; it < 60; ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc;
                c = b - gr * (b - a);
                fc = gain(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + gr * (b - a);
                fd = gain(d);
            }
        }
        best = std::max(best, std::max(fc, fd));
    }
    return best;
}

namespace {

Mat lmi_block(const StateSpaceSystem& sys, double gamma, const Mat& x) {
    const int n = sys.a.rows, m = sys.b.cols;
    const Mat atx = sys.a.transpose() * x + x * sys.a;
    const Mat xb = x * sys.b;
    Mat block(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) block(i, j) = atx(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            block(i, n + j) = xb(i, j);
            block(n + j, i) = xb(i, j);
        }
    for (int j = 0; j < m; ++j) block(n + j, n + j) = -gamma;
    // + (1/gamma) [C D]^T [C D]
    Mat cd(sys.c.rows, n + m);
    for (int i = 0; i < sys.c.rows; ++i) {
        for (int j = 0; j < n; ++j) cd(i, j) = sys.c(i, j);
        for (int j = 0; j < m; ++j) cd(i, n + j) = sys.d(i, j);
    }
    block = block + (1.0 / gamma) * (cd.transpose() * cd);
    return block;
}

} // namespace

bool lmi_feasible(const StateSpaceSystem& sys, double gamma, const Mat& x) {
    const SymEigen se = sym_eigen(lmi_block(sys, gamma, x), false);
    return !se.values.empty() && se.values.back() < 0.0;
}

double are_residual_generic(const StateSpaceSystem& sys, double gamma, const Mat& x) {
    const int m = sys.b.cols;
    Mat mid = (1.0 / gamma) * (sys.d.transpose() * sys.d);
    for (int i = 0; i < m; ++i) mid(i, i) -= gamma;
    if (is_numerically_singular(mid))
        throw SingularMiddleBlock("are_residual_generic: -gamma I + D^T D/gamma is singular");
    const Mat cross = x * sys.b + sys.c.transpose() * sys.d;
    const Mat res = sys.a.transpose() * x + x * sys.a - cross * solve(mid, cross.transpose()) +
                    (1.0 / gamma) * (sys.c.transpose() * sys.c);
    return res.frobenius();
}

namespace {

// Schur-complement form of the block inequality; its exact zero set is the
// Riccati equation the Newton iteration solves.
Mat schur_operator(const StateSpaceSystem& sys, double gamma, const Mat& x) {
    const int m = sys.b.cols;
    Mat mid = (1.0 / gamma) * (sys.d.transpose() * sys.d);
    for (int i = 0; i < m; ++i) mid(i, i) -= gamma;
    const Mat cross = x * sys.b + (1.0 / gamma) * (sys.c.transpose() * sys.d);
    return sys.a.transpose() * x + x * sys.a - cross * solve(mid, cross.transpose()) +
           (1.0 / gamma) * (sys.c.transpose() * sys.c);
}

Mat closed_loop(const StateSpaceSystem& sys, double gamma, const Mat& x) {
    const int m = sys.b.cols;
    Mat mid = (1.0 / gamma) * (sys.d.transpose() * sys.d);
    for (int i = 0; i < m; ++i) mid(i, i) -= gamma;
    const Mat cross = sys.b.transpose() * x + (1.0 / gamma) * (sys.d.transpose() * sys.c);
    return sys.a - sys.b * solve(mid, cross);
}

// A^T H + H A = -Q by Kronecker vectorization; fine for the small systems the
// Newton path handles.
std::optional<Mat> solve_lyapunov(const Mat& a, const Mat& q) {
    const int n = a.rows;
    Mat big(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                big(i * n + j, k * n + j) += a(k, i);
                big(i * n + j, i * n + k) += a(k, j);
            }
    Mat rhs(n * n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rhs(i * n + j, 0) = -q(i, j);
    if (is_numerically_singular(big, 1e-14)) return std::nullopt;
    const Mat sol = solve(std::move(big), std::move(rhs));
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = sol(i * n + j, 0);
    // symmetrize against roundoff
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (h(i, j) + h(j, i));
            h(i, j) = v;
            h(j, i) = v;
        }
    return h;
}

} // namespace

std::optional<Mat> solve_bounded_real_are(const StateSpaceSystem& sys, double gamma,
                                          int max_iter) {
    const int n = sys.a.rows;
    {
        const SymEigen sd = sym_eigen(sys.d.transpose() * sys.d, false);
        if (!sd.values.empty() && sd.values.back() >= gamma * gamma) return std::nullopt;
    }
    Mat x = 1e-6 * Mat::identity(n);
    double fnorm = schur_operator(sys, gamma, x).frobenius();
    for (int it = 0; it < max_iter; ++it) {
        if (fnorm <= 1e-12 * std::max(1.0, x.max_abs())) return x;
        const Mat acl = closed_loop(sys, gamma, x);
        const Mat f = schur_operator(sys, gamma, x);
        const auto h = solve_lyapunov(acl, f);
        if (!h) return std::nullopt;
        double step = 1.0;
        Mat xn = x + *h;
        double fn = schur_operator(sys, gamma, xn).frobenius();
        while (fn > fnorm && step > 1e-10) {
            step *= 0.5;
            xn = x + step * (*h);
            fn = schur_operator(sys, gamma, xn).frobenius();
        }
        if (fn >= fnorm) break; // stalled
        x = std::move(xn);
        fnorm = fn;
    }
    return fnorm <= 1e-9 * std::max(1.0, x.max_abs()) ? std::optional<Mat>(x) : std::nullopt;
}

Mat lmi_interior_candidate(const StateSpaceSystem& sys, double gamma, const Mat& x_are) {
    const Mat acl = closed_loop(sys, gamma, x_are);
    const auto p = solve_lyapunov(acl, Mat::identity(sys.a.rows));
    if (!p) return x_are;
    double eps = 1e-3 / std::max(1.0, p->max_abs());
    for (int k = 0; k < 40; ++k) {
        const Mat cand = x_are + eps * (*p);
        const SymEigen se = sym_eigen(schur_operator(sys, gamma, cand), false);
        if (!se.values.empty() && se.values.back() < 0.0) return cand;
        eps *= 0.5;
    }
    return x_are;
}

} // namespace rcons
