#include "rcons/sim.hpp"

#include <algorithm>
#include <cmath>

#include "rcons/parallel.hpp"
#include "rcons/rng.hpp"

namespace rcons {

void confidence_band(MomentSeries& series) {
    const int n_t = static_cast<int>(series.times.size());
    series.band_low.assign(n_t, {});
    series.band_high.assign(n_t, {});
    for (int t = 0; t < n_t; ++t) {
        const int d = series.mean[t].dim;
        series.band_low[t].assign(d, 0.0);
        series.band_high[t].assign(d, 0.0);
        for (int k = 0; k < d; ++k) {
            const double m = series.agent_mean(t, k);
            double worst = 0.0;
            for (int i = 0; i < series.variance[t].n_agents; ++i)
                worst = std::max(worst, series.variance[t].at(i, k));
            const double spread = std::sqrt(std::max(worst, 0.0));
            series.band_low[t][k] = m - spread;
            series.band_high[t][k] = m + spread;
        }
    }
}

namespace {

struct SnapshotGrid {
    int substeps; ///< integration steps between snapshots
    double h;     ///< actual step
};

SnapshotGrid make_grid(double T, double dt, int snapshots) {
    if (!(T > 0.0) || !(dt > 0.0) || snapshots < 1)
        throw ConfigError("time grid requires T > 0, dt > 0, snapshots >= 1");
    const double per = T / snapshots;
    const int sub = std::max(1, static_cast<int>(std::llround(per / dt)));
    return {sub, per / sub};
}

void check_config(const ModelParams& params, const UncertaintySpec& unc, const GpcBasis& basis) {
    params.validate();
    validate_uncertainty(unc, params);
    if (basis.dims() != params.z)
        throw ConfigError("basis dimension count does not match z");
    for (int j = 0; j < basis.dims(); ++j)
        if (basis.components[j].kind != unc[j].kind)
            throw ConfigError("basis family does not match input distribution");
}

} // namespace

MomentSeries run_micro_sg(const ModelParams& params, const UncertaintySpec& unc,
                          const GpcBasis& basis, const RiccatiGains& gains, ControlKind control,
                          const AgentStates& v0, double T, double dt, int snapshots,
                          int quad_points) {
    check_config(params, unc, basis);
    if (quad_points < basis.order + 1)
        throw ConfigError("quad_points must be at least order + 1");

    std::vector<QuadratureRule> rules;
    rules.reserve(unc.size());
    for (const auto& u : unc) rules.push_back(rule_for(u, quad_points));
    const BasisMoments moments = basis_moments(basis, rules);
    GpcProjection proj = build_projection(basis, moments, unc);

    // the corrected feedback law only shifts the zero-mode forcing
    if (control == ControlKind::FeedbackCorrected)
        proj.forcing[0] -= proj.input_mean_sum;

    GpcCoefficients coeffs = project_initial(v0, basis);

    const SnapshotGrid grid = make_grid(T, dt, snapshots);

    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        if (control == ControlKind::Averaged)
            rhs_averaged_raw(y.data(), dy.data(), coeffs.n_agents, coeffs.n_modes, coeffs.dim,
                             params, gains, gains.s, proj);
        else
            rhs_feedback_raw(y.data(), dy.data(), coeffs.n_agents, coeffs.n_modes, coeffs.dim,
                             params, gains, proj);
    };

    MomentSeries series;
    series.times.reserve(snapshots + 1);
    Rk4Workspace ws;
    for (int snap = 0; snap <= snapshots; ++snap) {
        if (snap > 0)
            for (int s = 0; s < grid.substeps; ++s)
                rk4_step_inplace(coeffs.data, grid.h, rhs, ws);
        series.times.push_back(snap * (T / snapshots));
        GpcMoments m = reconstruct_moments(coeffs, moments);
        series.mean.push_back(std::move(m.mean));
        series.variance.push_back(std::move(m.variance));
    }
    confidence_band(series);
    return series;
}

namespace {

// drift with a fixed control array: dy = p_bar (mean - v) + u + theta_sum
void stage_drift(const std::vector<double>& v, const std::vector<double>& u,
                 const std::vector<double>& theta_sum, int n, int d, double p_bar,
                 std::vector<double>& dy) {
    for (int k = 0; k < d; ++k) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += v[static_cast<std::size_t>(i) * d + k];
        mean /= n;
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(i) * d + k;
            dy[idx] = p_bar * (mean - v[idx]) + u[idx] + theta_sum[k];
        }
    }
}

// feedback control written straight onto flat arrays
void stage_feedback(const std::vector<double>& v, int n, int d, double kd_eff, double ko,
                    double nu, double shift, std::vector<double>& u) {
    for (int k = 0; k < d; ++k) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += v[static_cast<std::size_t>(i) * d + k];
        mean /= n;
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(i) * d + k;
            u[idx] = -(kd_eff * v[idx] + ko * mean) / nu - shift;
        }
    }
}

} // namespace

MomentSeries run_micro_sampled(const ModelParams& params, const UncertaintySpec& unc,
                               const RiccatiGains& gains, ControlKind control,
                               const AgentStates& v0, double T, double dt, int n_samples,
                               std::uint64_t seed, int snapshots) {
    params.validate();
    validate_uncertainty(unc, params);
    if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
    const SnapshotGrid grid = make_grid(T, dt, snapshots);
    const int n = params.n_agents, d = params.dim, z = params.z;
    const std::size_t state_len = static_cast<std::size_t>(n) * d;
    const int n_snap = snapshots + 1;
    const int total_steps = snapshots * grid.substeps;
    const double h = grid.h;

    double mean_sum = 0.0;
    for (const auto& u : unc) mean_sum += u.mean();
    const double kd_eff = gains.k_d - gains.k_o / n;

    // The averaged control is a deterministic function of time shared by all
    // trajectories; precompute it at every integrator stage so the sampled
    // paths see exactly the controls of the coupled (state, mean) system.
    std::vector<std::vector<double>> stage_u; // [step*4 + stage] -> control array
    if (control == ControlKind::Averaged) {
        stage_u.assign(static_cast<std::size_t>(total_steps) * 4,
                       std::vector<double>(state_len, 0.0));
        std::vector<double> m = v0.values;
        std::vector<double> theta_mean(d, 0.0);
        for (int k = 0; k < d; ++k) theta_mean[k] = mean_sum;
        std::vector<double> k1(state_len), k2(state_len), k3(state_len), k4(state_len),
            tmp(state_len);
        auto control_at = [&](const std::vector<double>& mv, std::vector<double>& u) {
            // u_i = -(1/nu)(k_d m_i + (k_o/N) sum_{j != i} m_j + s * sum mu)
            for (int k = 0; k < d; ++k) {
                double sum = 0.0;
                for (int i = 0; i < n; ++i) sum += mv[static_cast<std::size_t>(i) * d + k];
                for (int i = 0; i < n; ++i) {
                    const std::size_t idx = static_cast<std::size_t>(i) * d + k;
                    u[idx] = -(gains.k_d * mv[idx] + gains.k_o / n * (sum - mv[idx]) +
                               gains.s * mean_sum) / params.nu;
                }
            }
        };
        for (int step = 0; step < total_steps; ++step) {
            auto& u1 = stage_u[static_cast<std::size_t>(step) * 4 + 0];
            auto& u2 = stage_u[static_cast<std::size_t>(step) * 4 + 1];
            auto& u3 = stage_u[static_cast<std::size_t>(step) * 4 + 2];
            auto& u4 = stage_u[static_cast<std::size_t>(step) * 4 + 3];
            control_at(m, u1);
            stage_drift(m, u1, theta_mean, n, d, params.p_bar, k1);
            for (std::size_t i = 0; i < state_len; ++i) tmp[i] = m[i] + 0.5 * h * k1[i];
            control_at(tmp, u2);
            stage_drift(tmp, u2, theta_mean, n, d, params.p_bar, k2);
            for (std::size_t i = 0; i < state_len; ++i) tmp[i] = m[i] + 0.5 * h * k2[i];
            control_at(tmp, u3);
            stage_drift(tmp, u3, theta_mean, n, d, params.p_bar, k3);
            for (std::size_t i = 0; i < state_len; ++i) tmp[i] = m[i] + h * k3[i];
            control_at(tmp, u4);
            stage_drift(tmp, u4, theta_mean, n, d, params.p_bar, k4);
            for (std::size_t i = 0; i < state_len; ++i)
                m[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    struct Accumulator {
        std::vector<double> sum, sumsq;      // [snapshot][agent*dim]
        std::vector<double> amean, amean_sq; // [snapshot][dim]
    };
    // fixed chunk layout keeps the reduction order independent of the number
    // of worker threads
    const std::size_t n_chunks = std::min<std::size_t>(16, static_cast<std::size_t>(n_samples));
    std::vector<Accumulator> acc(n_chunks);
    for (auto& a : acc) {
        a.sum.assign(static_cast<std::size_t>(n_snap) * state_len, 0.0);
        a.sumsq.assign(static_cast<std::size_t>(n_snap) * state_len, 0.0);
        a.amean.assign(static_cast<std::size_t>(n_snap) * d, 0.0);
        a.amean_sq.assign(static_cast<std::size_t>(n_snap) * d, 0.0);
    }
    const double ctrl_shift = control == ControlKind::FeedbackCorrected ? mean_sum : 0.0;

    parallel_chunks(static_cast<std::size_t>(n_samples), n_chunks,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Accumulator& a = acc[chunk];
        std::vector<double> theta_sum(d), v(state_len), u(state_len);
        std::vector<double> k1(state_len), k2(state_len), k3(state_len), k4(state_len),
            tmp(state_len);
        for (std::size_t s = begin; s < end; ++s) {
            SplitMix64 rng(stream_seed(seed, s));
            std::fill(theta_sum.begin(), theta_sum.end(), 0.0);
            for (int c = 0; c < z; ++c)
                for (int k = 0; k < d; ++k) {
                    const Uncertainty& un = unc[c];
                    theta_sum[k] += un.kind == Uncertainty::Kind::Gaussian
                                        ? un.mu + std::sqrt(un.sigma2) * rng.gaussian()
                                        : rng.uniform(un.a, un.b);
                }
            v = v0.values;

            auto stage = [&](const std::vector<double>& vs, int step, int q,
                             std::vector<double>& dy) {
                if (control == ControlKind::Averaged) {
                    stage_drift(vs, stage_u[static_cast<std::size_t>(step) * 4 + q], theta_sum,
                                n, d, params.p_bar, dy);
                } else {
                    stage_feedback(vs, n, d, kd_eff, gains.k_o, params.nu, ctrl_shift, u);
                    stage_drift(vs, u, theta_sum, n, d, params.p_bar, dy);
                }
            };
            auto record = [&](int snap) {
                for (std::size_t i = 0; i < state_len; ++i) {
                    const double x = v[i];
                    a.sum[snap * state_len + i] += x;
                    a.sumsq[snap * state_len + i] += x * x;
                }
                for (int k = 0; k < d; ++k) {
                    double m = 0.0;
                    for (int i = 0; i < n; ++i) m += v[static_cast<std::size_t>(i) * d + k];
                    m /= n;
                    a.amean[static_cast<std::size_t>(snap) * d + k] += m;
                    a.amean_sq[static_cast<std::size_t>(snap) * d + k] += m * m;
                }
            };
            record(0);
            int step = 0;
            for (int snap = 1; snap <= snapshots; ++snap) {
                for (int st = 0; st < grid.substeps; ++st, ++step) {
                    stage(v, step, 0, k1);
                    for (std::size_t i = 0; i < state_len; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
                    stage(tmp, step, 1, k2);
                    for (std::size_t i = 0; i < state_len; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
                    stage(tmp, step, 2, k3);
                    for (std::size_t i = 0; i < state_len; ++i) tmp[i] = v[i] + h * k3[i];
                    stage(tmp, step, 3, k4);
                    for (std::size_t i = 0; i < state_len; ++i)
                        v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
                record(snap);
            }
        }
    });

    MomentSeries series;
    series.times.resize(n_snap);
    series.mean.assign(n_snap, AgentStates(n, d));
    series.variance.assign(n_snap, AgentStates(n, d));
    series.mean_se.assign(n_snap, std::vector<double>(d, 0.0));
    const double inv_s = 1.0 / n_samples;
    for (int snap = 0; snap < n_snap; ++snap) {
        series.times[snap] = snap * (T / snapshots);
        for (std::size_t i = 0; i < state_len; ++i) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t c = 0; c < n_chunks; ++c) {
                s1 += acc[c].sum[snap * state_len + i];
                s2 += acc[c].sumsq[snap * state_len + i];
            }
            const double m = s1 * inv_s;
            series.mean[snap].values[i] = m;
            series.variance[snap].values[i] = std::max(0.0, s2 * inv_s - m * m);
        }
        for (int k = 0; k < d; ++k) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t c = 0; c < n_chunks; ++c) {
                s1 += acc[c].amean[static_cast<std::size_t>(snap) * d + k];
                s2 += acc[c].amean_sq[static_cast<std::size_t>(snap) * d + k];
            }
            const double m = s1 * inv_s;
            const double var = std::max(0.0, s2 * inv_s - m * m);
            series.mean_se[snap][k] = std::sqrt(var * inv_s);
        }
    }
    confidence_band(series);
    return series;
}

} // namespace rcons
