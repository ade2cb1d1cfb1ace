#include "rcons/model.hpp"

#include <cmath>

namespace rcons {

void ModelParams::validate() const {
    if (n_agents < 2) throw ConfigError("n_agents must be >= 2");
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (!(p_bar >= 0.0)) throw ConfigError("p_bar must be >= 0");
    if (!(nu > 0.0)) throw ConfigError("nu must be > 0");
    if (!(r >= 0.0)) throw ConfigError("r must be >= 0");
    if (z < 1) throw ConfigError("z must be >= 1");
}

Uncertainty Uncertainty::gaussian(double mu, double sigma2) {
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian sigma2 must be > 0");
    Uncertainty u;
    u.kind = Kind::Gaussian;
    u.mu = mu;
    u.sigma2 = sigma2;
    return u;
}

Uncertainty Uncertainty::uniform(double a, double b) {
    if (!(a < b)) throw ConfigError("uniform interval requires a < b");
    Uncertainty u;
    u.kind = Kind::Uniform;
    u.a = a;
    u.b = b;
    return u;
}

double Uncertainty::mean() const {
    return kind == Kind::Gaussian ? mu : 0.5 * (a + b);
}

double Uncertainty::variance() const {
    if (kind == Kind::Gaussian) return sigma2;
    const double w = b - a;
    return w * w / 12.0;
}

double Uncertainty::linear_scale() const {
    return kind == Kind::Gaussian ? std::sqrt(sigma2) : 0.5 * (b - a);
}

void validate_uncertainty(const UncertaintySpec& unc, const ModelParams& params) {
    if (static_cast<int>(unc.size()) != params.z)
        throw ConfigError("uncertainty list length does not match z");
}

InteractionMatrix build_interaction_matrix(const ModelParams& params) {
    params.validate();
    InteractionMatrix m;
    m.n = params.n_agents;
    m.a_o = params.p_bar / params.n_agents;
    // evaluated as -(N-1)*a_o so the row sum cancels exactly in floating point
    m.a_d = -(params.n_agents - 1) * m.a_o;
    return m;
}

namespace {

double input_mean_sum(const UncertaintySpec& unc) {
    double s = 0.0;
    for (const auto& u : unc) s += u.mean();
    return s;
}

} // namespace

AgentStates feedback_control(const AgentStates& v, const RiccatiGains& gains,
                             const ModelParams& params) {
    const int n = v.n_agents, d = v.dim;
    const double kd_eff = gains.k_d - gains.k_o / n;
    const double ko_n = gains.k_o / n;
    AgentStates u(n, d);
    for (int k = 0; k < d; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += v.at(i, k);
        for (int i = 0; i < n; ++i)
            u.at(i, k) = -(kd_eff * v.at(i, k) + ko_n * sum) / params.nu;
    }
    return u;
}

AgentStates feedback_control_pairwise(const AgentStates& v, const RiccatiGains& gains,
                                      const ModelParams& params) {
    const int n = v.n_agents, d = v.dim;
    const double ko_n = gains.k_o / n;
    AgentStates u(n, d);
    for (int k = 0; k < d; ++k) {
        for (int i = 0; i < n; ++i) {
            double others = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) others += v.at(j, k);
            u.at(i, k) = -(gains.k_d * v.at(i, k) + ko_n * others) / params.nu;
        }
    }
    return u;
}

AgentStates feedback_control_corrected(const AgentStates& v, const RiccatiGains& gains,
                                       const ModelParams& params, const UncertaintySpec& unc) {
    AgentStates u = feedback_control(v, gains, params);
    const double correction = input_mean_sum(unc);
    if (correction != 0.0)
        for (double& x : u.values) x -= correction;
    return u;
}

AgentStates averaged_control(const AgentStates& mean_state, const RiccatiGains& gains,
                             const ModelParams& params, const UncertaintySpec& unc) {
    const int n = mean_state.n_agents, d = mean_state.dim;
    const double ko_n = gains.k_o / n;
    const double mean_term = gains.s * input_mean_sum(unc);
    AgentStates u(n, d);
    for (int k = 0; k < d; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += mean_state.at(i, k);
        for (int i = 0; i < n; ++i) {
            const double others = sum - mean_state.at(i, k);
            u.at(i, k) = -(gains.k_d * mean_state.at(i, k) + ko_n * others + mean_term) / params.nu;
        }
    }
    return u;
}

AgentStates drift(const AgentStates& v, const std::vector<double>& theta,
                  const AgentStates& control, const ModelParams& params) {
    const int n = v.n_agents, d = v.dim;
    AgentStates dv(n, d);
    for (int k = 0; k < d; ++k) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += v.at(i, k);
        mean /= n;
        double theta_sum = 0.0;
        for (int c = 0; c < params.z; ++c) theta_sum += theta[static_cast<std::size_t>(c) * d + k];
        for (int i = 0; i < n; ++i)
            dv.at(i, k) = params.p_bar * (mean - v.at(i, k)) + control.at(i, k) + theta_sum;
    }
    return dv;
}

} // namespace rcons
