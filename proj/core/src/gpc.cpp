#include "rcons/gpc.hpp"

#include <cmath>

namespace rcons {

double GpcBasis::eval(int j, int k, double theta_j) const {
    const Uncertainty& u = components[j];
    if (u.kind == Uncertainty::Kind::Gaussian) {
        const double xi = (theta_j - u.mu) / std::sqrt(u.sigma2);
        // He_{k+1} = xi He_k - k He_{k-1}
        double prev = 1.0, cur = xi;
        if (k == 0) return 1.0;
        for (int i = 1; i < k; ++i) {
            const double next = xi * cur - i * prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    const double xi = (2.0 * theta_j - u.a - u.b) / (u.b - u.a);
    // (k+1) P_{k+1} = (2k+1) xi P_k - k P_{k-1}
    double prev = 1.0, cur = xi;
    if (k == 0) return 1.0;
    for (int i = 1; i < k; ++i) {
        const double next = ((2.0 * i + 1.0) * xi * cur - i * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

GpcCoefficients project_initial(const AgentStates& v0, const GpcBasis& basis) {
    MultiIndexSet modes{basis.dims(), basis.order};
    GpcCoefficients c(v0.n_agents, modes.size(), v0.dim);
    for (int i = 0; i < v0.n_agents; ++i)
        for (int k = 0; k < v0.dim; ++k) c.at(i, 0, k) = v0.at(i, k);
    return c;
}

GpcProjection build_projection(const GpcBasis& basis, const BasisMoments& moments,
                               const UncertaintySpec& unc) {
    const int z = basis.dims();
    GpcProjection proj;
    proj.modes = MultiIndexSet{z, basis.order};
    const int n_modes = proj.modes.size();
    proj.forcing.assign(n_modes, 0.0);
    proj.control_mask.assign(n_modes, 0.0);
    for (const auto& u : unc) proj.input_mean_sum += u.mean();

    std::vector<int> idx(z);
    for (int mode = 0; mode < n_modes; ++mode) {
        proj.modes.decode(mode, idx.data());
        double m2_prod = 1.0, m0_prod = 1.0;
        for (int j = 0; j < z; ++j) {
            m2_prod *= moments.m2[j][idx[j]];
            m0_prod *= moments.m0[j][idx[j]];
        }
        double force = 0.0;
        for (int l = 0; l < z; ++l) {
            double term = moments.m1[l][idx[l]];
            for (int j = 0; j < z; ++j)
                if (j != l) term *= moments.m0[j][idx[j]];
            force += term;
        }
        // projection onto an unnormalized basis divides by E[Phi^2]
        proj.forcing[mode] = force / m2_prod;
        proj.control_mask[mode] = m0_prod / m2_prod;
    }
    return proj;
}

void rhs_feedback_raw(const double* c, double* out, int n_agents, int n_modes, int dim,
                      const ModelParams& params, const RiccatiGains& gains,
                      const GpcProjection& proj) {
    const int n = n_agents, d = dim;
    const double inv_nu = 1.0 / params.nu;
    const double kd_eff = gains.k_d - gains.k_o / n;
    const std::size_t stride = static_cast<std::size_t>(n_modes) * d;
    for (int mode = 0; mode < n_modes; ++mode) {
        const double force = proj.forcing[mode];
        for (int k = 0; k < d; ++k) {
            const std::size_t off = static_cast<std::size_t>(mode) * d + k;
            double mean = 0.0;
            for (int i = 0; i < n; ++i) mean += c[off + i * stride];
            mean /= n;
            const double coupled = params.p_bar * mean - inv_nu * gains.k_o * mean + force;
            const double self = params.p_bar + inv_nu * kd_eff;
            for (int i = 0; i < n; ++i)
                out[off + i * stride] = coupled - self * c[off + i * stride];
        }
    }
}

void rhs_averaged_raw(const double* c, double* out, int n_agents, int n_modes, int dim,
                      const ModelParams& params, const RiccatiGains& gains, double s,
                      const GpcProjection& proj) {
    const int n = n_agents, d = dim;
    const double inv_nu = 1.0 / params.nu;
    const double ko_n = gains.k_o / n;
    const double mean_term = s * proj.input_mean_sum;
    const std::size_t stride = static_cast<std::size_t>(n_modes) * d;
    for (int mode = 0; mode < n_modes; ++mode) {
        const double force = proj.forcing[mode];
        const double mask = proj.control_mask[mode];
        for (int k = 0; k < d; ++k) {
            const std::size_t off = static_cast<std::size_t>(mode) * d + k;
            const std::size_t off0 = k;
            double mean = 0.0, sum0 = 0.0;
            for (int i = 0; i < n; ++i) {
                mean += c[off + i * stride];
                sum0 += c[off0 + i * stride];
            }
            mean /= n;
            const double cmask = mask * inv_nu;
            for (int i = 0; i < n; ++i) {
                const double v0i = c[off0 + i * stride];
                const double control = -cmask * (gains.k_d * v0i + ko_n * (sum0 - v0i) + mean_term);
                out[off + i * stride] = params.p_bar * (mean - c[off + i * stride]) + control + force;
            }
        }
    }
}

void rhs_feedback_into(const GpcCoefficients& c, const ModelParams& params,
                       const RiccatiGains& gains, const GpcProjection& proj,
                       GpcCoefficients& out) {
    rhs_feedback_raw(c.data.data(), out.data.data(), c.n_agents, c.n_modes, c.dim, params,
                     gains, proj);
}

void rhs_averaged_into(const GpcCoefficients& c, const ModelParams& params,
                       const RiccatiGains& gains, double s, const GpcProjection& proj,
                       GpcCoefficients& out) {
    rhs_averaged_raw(c.data.data(), out.data.data(), c.n_agents, c.n_modes, c.dim, params,
                     gains, s, proj);
}

GpcCoefficients rhs_feedback(const GpcCoefficients& c, const ModelParams& params,
                             const RiccatiGains& gains, const GpcProjection& proj) {
    GpcCoefficients out(c.n_agents, c.n_modes, c.dim);
    rhs_feedback_into(c, params, gains, proj, out);
    return out;
}

GpcCoefficients rhs_averaged(const GpcCoefficients& c, const ModelParams& params,
                             const RiccatiGains& gains, double s, const GpcProjection& proj) {
    GpcCoefficients out(c.n_agents, c.n_modes, c.dim);
    rhs_averaged_into(c, params, gains, s, proj, out);
    return out;
}

GpcMoments reconstruct_moments(const GpcCoefficients& c, const BasisMoments& moments) {
    const int z = static_cast<int>(moments.m2.size());
    MultiIndexSet modes{z, static_cast<int>(moments.m2[0].size()) - 1};
    GpcMoments out;
    out.mean = AgentStates(c.n_agents, c.dim);
    out.variance = AgentStates(c.n_agents, c.dim);
    std::vector<int> idx(z);
    for (int mode = 0; mode < c.n_modes; ++mode) {
        modes.decode(mode, idx.data());
        double m2_prod = 1.0;
        for (int j = 0; j < z; ++j) m2_prod *= moments.m2[j][idx[j]];
        for (int i = 0; i < c.n_agents; ++i) {
            for (int k = 0; k < c.dim; ++k) {
                const double v = c.at(i, mode, k);
                if (mode == 0)
                    out.mean.at(i, k) = v;
                else
                    out.variance.at(i, k) += v * v * m2_prod;
            }
        }
    }
    return out;
}

AgentStates evaluate_realization(const GpcCoefficients& c, const std::vector<double>& theta,
                                 const GpcBasis& basis) {
    const int z = basis.dims(), d = c.dim;
    MultiIndexSet modes{z, basis.order};
    // basis values per (state dim, input dim, order)
    std::vector<double> phi(static_cast<std::size_t>(d) * z * (basis.order + 1));
    auto phi_at = [&](int k, int j, int ord) -> double& {
        return phi[(static_cast<std::size_t>(k) * z + j) * (basis.order + 1) + ord];
    };
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < z; ++j)
            for (int ord = 0; ord <= basis.order; ++ord)
                phi_at(k, j, ord) = basis.eval(j, ord, theta[static_cast<std::size_t>(j) * d + k]);

    AgentStates v(c.n_agents, d);
    std::vector<int> idx(z);
    for (int mode = 0; mode < c.n_modes; ++mode) {
        modes.decode(mode, idx.data());
        for (int k = 0; k < d; ++k) {
            double w = 1.0;
            for (int j = 0; j < z; ++j) w *= phi_at(k, j, idx[j]);
            if (w == 0.0) continue;
            for (int i = 0; i < c.n_agents; ++i) v.at(i, k) += w * c.at(i, mode, k);
        }
    }
    return v;
}

} // namespace rcons
