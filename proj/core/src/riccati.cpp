#include "rcons/riccati.hpp"

#include <algorithm>
#include <cmath>

namespace rcons {

namespace {

// root of x^2 + 2 b x - q = 0 with q >= 0, written to avoid cancellation
double positive_quadratic_root(double b, double q) {
    return q / (b + std::sqrt(b * b + q));
}

} // namespace

LimitGains limit_gains(double p_bar, double nu, double r) {
    const double pt = p_bar + 0.5 * r;
    LimitGains g;
    // k_d^2/nu + (2 p_bar + r) k_d - 1 = 0
    g.k_d = positive_quadratic_root(nu * pt, nu) ;
    // k_o^2/nu + (2 k_d/nu + r) k_o - 2 p_bar k_d = 0
    g.k_o = positive_quadratic_root(g.k_d + 0.5 * nu * r, 2.0 * nu * p_bar * g.k_d);
    return g;
}

LimitGainRoots limit_gains_all_roots(double p_bar, double nu, double r) {
    const double pt = p_bar + 0.5 * r;
    const double disc_d = nu * std::sqrt(pt * pt + 1.0 / nu);
    LimitGainRoots roots;
    roots.k_d_plus = -nu * pt + disc_d;
    roots.k_d_minus = -nu * pt - disc_d;
    const double bd = roots.k_d_plus + 0.5 * nu * r;
    const double disc_o = std::sqrt(bd * bd + 2.0 * nu * p_bar * roots.k_d_plus);
    roots.k_o_plus = -bd + disc_o;
    roots.k_o_minus = -bd - disc_o;
    return roots;
}

std::pair<double, double> residual_kd_ko(double k_d, double k_o, const ModelParams& params) {
    const double n = params.n_agents;
    const double alpha = (n - 1.0) / n;
    const double f1 = -params.r * k_d - 2.0 * params.p_bar * alpha * (k_d - k_o / n) -
                      (k_d * k_d + alpha / n * k_o * k_o) / params.nu + 1.0;
    const double f2 = -params.r * k_o + 2.0 * params.p_bar * (k_d - k_o / n) -
                      (2.0 * k_d * k_o + alpha * k_o * k_o - k_o * k_o / n) / params.nu;
    return {f1, f2};
}

std::pair<double, double> residual_kd_ko_unscaled(double k_d, double k_o,
                                                  const ModelParams& params) {
    const double n = params.n_agents;
    const double f1 = -params.r * k_d - 2.0 * params.p_bar * (n - 1.0) / n * (k_d - k_o) -
                      n / params.nu * (k_d * k_d + (n - 1.0) * k_o * k_o) + 1.0 / n;
    const double f2 = -params.r * k_o + 2.0 * params.p_bar / n * (k_d - k_o) -
                      n / params.nu * (2.0 * k_d * k_o + (n - 2.0) * k_o * k_o);
    return {f1, f2};
}

RiccatiGains solve_finite_n_gains(const ModelParams& params) {
    params.validate();
    const double n = params.n_agents;
    const double alpha = (n - 1.0) / n;
    const LimitGains start = limit_gains(params.p_bar, params.nu, params.r);
    double kd = start.k_d, ko = start.k_o;

    auto residual_norm = [&](double a, double b) {
        auto [f1, f2] = residual_kd_ko(a, b, params);
        return std::max(std::fabs(f1), std::fabs(f2));
    };

    for (int it = 0; it < 100; ++it) {
        auto [f1, f2] = residual_kd_ko(kd, ko, params);
        const double fmax = std::max(std::fabs(f1), std::fabs(f2));
        if (fmax <= 1e-13) break;
        // Jacobian of the two residuals
        const double j11 = -params.r - 2.0 * params.p_bar * alpha - 2.0 * kd / params.nu;
        const double j12 = 2.0 * params.p_bar * alpha / n - 2.0 * alpha * ko / (params.nu * n);
        const double j21 = 2.0 * params.p_bar - 2.0 * ko / params.nu;
        const double j22 = -params.r - 2.0 * params.p_bar / n -
                           (2.0 * kd + 2.0 * alpha * ko - 2.0 * ko / n) / params.nu;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) throw NonConvergence("gain Newton: singular Jacobian");
        double dkd = -(f1 * j22 - f2 * j12) / det;
        double dko = -(j11 * f2 - j21 * f1) / det;
        double step = 1.0;
        while (step > 1e-12 && residual_norm(kd + step * dkd, ko + step * dko) > fmax)
            step *= 0.5;
        kd += step * dkd;
        ko += step * dko;
    }

    if (residual_norm(kd, ko) > 1e-12)
        throw NonConvergence("gain Newton did not reach tolerance");
    return RiccatiGains{kd, ko, params.nu};
}

namespace {

// right-hand side of the backward reduced gain flow (scaled, no discount);
// stationary points are the r = 0 algebraic gains
void gain_flow(const ModelParams& params, double kd, double ko, double& dkd, double& dko) {
    ModelParams p0 = params;
    p0.r = 0.0;
    auto [f1, f2] = residual_kd_ko(kd, ko, p0);
    dkd = f1;
    dko = f2;
}

} // namespace

GainSchedule solve_finite_horizon_gains(const ModelParams& params, double T, double dt) {
    params.validate();
    if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("finite horizon requires T > 0 and dt > 0");
    const int steps = std::max(1, static_cast<int>(std::llround(T / dt)));
    const double h = T / steps;

    GainSchedule sched;
    sched.t.resize(steps + 1);
    sched.k_d.resize(steps + 1);
    sched.k_o.resize(steps + 1);
    // integrate in tau = T - t from the zero terminal condition
    double kd = 0.0, ko = 0.0;
    sched.t[steps] = T;
    sched.k_d[steps] = 0.0;
    sched.k_o[steps] = 0.0;
    for (int s = 1; s <= steps; ++s) {
        double a1, b1, a2, b2, a3, b3, a4, b4;
        gain_flow(params, kd, ko, a1, b1);
        gain_flow(params, kd + 0.5 * h * a1, ko + 0.5 * h * b1, a2, b2);
        gain_flow(params, kd + 0.5 * h * a2, ko + 0.5 * h * b2, a3, b3);
        gain_flow(params, kd + h * a3, ko + h * b3, a4, b4);
        kd += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        ko += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        const int idx = steps - s;
        sched.t[idx] = T - s * h;
        sched.k_d[idx] = kd;
        sched.k_o[idx] = ko;
    }
    return sched;
}

double solve_s(const ModelParams& params) {
    params.validate();
    return params.nu;
}

SSchedule solve_s_finite_horizon(const ModelParams& params, double k_d, double k_o,
                                 double T, double dt) {
    params.validate();
    if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("finite horizon requires T > 0 and dt > 0");
    const int steps = std::max(1, static_cast<int>(std::llround(T / dt)));
    const double h = T / steps;
    const double g = k_d + (params.n_agents - 1.0) / params.n_agents * k_o;

    auto flow = [&](double s) { return g * (1.0 - s / params.nu); };

    SSchedule sched;
    sched.t.resize(steps + 1);
    sched.s.resize(steps + 1);
    sched.t[steps] = T;
    sched.s[steps] = 0.0;
    double s = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double k1 = flow(s);
        const double k2 = flow(s + 0.5 * h * k1);
        const double k3 = flow(s + 0.5 * h * k2);
        const double k4 = flow(s + h * k3);
        s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        sched.t[steps - k] = T - k * h;
        sched.s[steps - k] = s;
    }
    return sched;
}

} // namespace rcons
