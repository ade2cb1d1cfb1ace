#include "rcons/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "rcons/parallel.hpp"

namespace rcons {

double Histogram::integral() const {
    double s = 0.0;
    for (std::size_t b = 0; b < mass.size(); ++b) s += mass[b] * (edges[b + 1] - edges[b]);
    return s;
}

double Histogram::first_moment() const {
    double s = 0.0;
    for (std::size_t b = 0; b < mass.size(); ++b) {
        const double center = 0.5 * (edges[b] + edges[b + 1]);
        s += center * mass[b] * (edges[b + 1] - edges[b]);
    }
    return s;
}

Histogram histogram(const std::vector<double>& samples, int bins,
                    std::pair<double, double> range) {
    if (samples.empty()) throw EmptyInput("histogram: no samples");
    if (bins < 1) throw ConfigError("histogram: bins must be >= 1");
    const auto [lo, hi] = range;
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("histogram: invalid range");
    Histogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[b] = lo + (hi - lo) * b / static_cast<double>(bins);
    std::vector<long> counts(bins, 0);
    const double inv_w = bins / (hi - lo);
    for (double x : samples) {
        int b = static_cast<int>((x - lo) * inv_w);
        b = std::clamp(b, 0, bins - 1);
        ++counts[b];
    }
    h.mass.resize(bins);
    const double width = (hi - lo) / bins;
    const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
    for (int b = 0; b < bins; ++b) h.mass[b] = counts[b] * norm;
    return h;
}

DensityPair density_moments(const std::vector<Histogram>& per_node,
                            const std::vector<double>& weights) {
    if (per_node.empty()) throw EmptyInput("density_moments: no histograms");
    if (per_node.size() != weights.size())
        throw ConfigError("density_moments: weight count mismatch");
    const std::size_t bins = per_node[0].mass.size();
    DensityPair out;
    out.mean.assign(bins, 0.0);
    out.std.assign(bins, 0.0);
    for (std::size_t node = 0; node < per_node.size(); ++node) {
        const double w = weights[node];
        for (std::size_t b = 0; b < bins; ++b) {
            const double f = per_node[node].mass[b];
            out.mean[b] += w * f;
            out.std[b] += w * f * f;
        }
    }
    for (std::size_t b = 0; b < bins; ++b)
        out.std[b] = std::sqrt(std::max(0.0, out.std[b] - out.mean[b] * out.mean[b]));
    return out;
}

std::pair<double, double> density_range(const AgentStates& v0) {
    double lo = v0.values[0], hi = v0.values[0];
    for (double x : v0.values) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    double spread = hi - lo;
    if (spread <= 0.0) spread = std::max(1.0, 0.1 * std::fabs(hi));
    return {lo - 3.0 * spread, hi + 3.0 * spread};
}

DensityMoments run_mc_sg(const ModelParams& params, const UncertaintySpec& unc,
                         const GpcBasis& basis, const RiccatiGains& gains, ControlKind control,
                         const AgentStates& v0, double T, double dt, int bins, int quad_points,
                         std::uint64_t seed, int snapshots) {
    (void)seed; // the caller samples v0; kept for interface symmetry
    if (params.dim != 1) throw ConfigError("run_mc_sg: one-dimensional states only");
    if (bins < 1) throw ConfigError("run_mc_sg: bins must be >= 1");
    params.validate();
    validate_uncertainty(unc, params);
    if (basis.dims() != params.z) throw ConfigError("run_mc_sg: basis/uncertainty mismatch");
    for (int j = 0; j < basis.dims(); ++j)
        if (basis.components[j].kind != unc[j].kind)
            throw ConfigError("run_mc_sg: basis family does not match input distribution");

    const int z = params.z, m1 = basis.order + 1;
    // quad_points sets the density evaluation grid; the projection moments
    // always get enough points for exact orthogonality
    std::vector<QuadratureRule> rules, moment_rules;
    rules.reserve(unc.size());
    moment_rules.reserve(unc.size());
    for (const auto& u : unc) {
        rules.push_back(rule_for(u, quad_points));
        moment_rules.push_back(rule_for(u, std::max(quad_points, basis.order + 1)));
    }

    // per-rule basis value tables, phi_dim[j][l * m1 + k] = Phi_k(theta_j^l)
    std::vector<std::vector<double>> phi_dim(z);
    for (int j = 0; j < z; ++j) {
        const int lj = static_cast<int>(rules[j].nodes.size());
        phi_dim[j].resize(static_cast<std::size_t>(lj) * m1);
        for (int l = 0; l < lj; ++l)
            for (int k = 0; k < m1; ++k)
                phi_dim[j][static_cast<std::size_t>(l) * m1 + k] =
                    basis.eval(j, k, rules[j].nodes[l]);
    }

    // tensor nodes with the first rule index fastest
    int n_nodes = 1;
    for (const auto& r : rules) n_nodes *= static_cast<int>(r.nodes.size());
    std::vector<double> node_weights(n_nodes, 1.0);
    for (int node = 0; node < n_nodes; ++node) {
        int rest = node;
        for (int j = 0; j < z; ++j) {
            const int lj = static_cast<int>(rules[j].nodes.size());
            node_weights[node] *= rules[j].weights[rest % lj];
            rest /= lj;
        }
    }

    const std::pair<double, double> range = density_range(v0);

    DensityMoments out;
    out.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        out.edges[b] = range.first + (range.second - range.first) * b / static_cast<double>(bins);

    const BasisMoments moments = basis_moments(basis, moment_rules);
    GpcProjection proj = build_projection(basis, moments, unc);
    if (control == ControlKind::FeedbackCorrected) proj.forcing[0] -= proj.input_mean_sum;

    GpcCoefficients coeffs = project_initial(v0, basis);
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        if (control == ControlKind::Averaged)
            rhs_averaged_raw(y.data(), dy.data(), coeffs.n_agents, coeffs.n_modes, coeffs.dim,
                             params, gains, gains.s, proj);
        else
            rhs_feedback_raw(y.data(), dy.data(), coeffs.n_agents, coeffs.n_modes, coeffs.dim,
                             params, gains, proj);
    };

    const double per = T / snapshots;
    const int substeps = std::max(1, static_cast<int>(std::llround(per / dt)));
    const double h = per / substeps;
    const int n_s = params.n_agents;
    const MultiIndexSet modes{z, basis.order};

    std::vector<Histogram> node_hists(n_nodes);
    std::vector<long> node_clipped(n_nodes, 0);
    Rk4Workspace ws;

    // For two inputs the contraction is staged: fold the second index against
    // its basis values once per snapshot, then sweep the first one per node.
    const bool staged = z == 2;
    const int l1 = static_cast<int>(rules[0].nodes.size());
    const int l2 = staged ? static_cast<int>(rules[1].nodes.size()) : 0;
    std::vector<double> half; // [agent][k0][second-rule node]
    if (staged) half.resize(static_cast<std::size_t>(n_s) * m1 * l2);

    for (int snap = 0; snap <= snapshots; ++snap) {
        if (snap > 0)
            for (int s = 0; s < substeps; ++s) rk4_step_inplace(coeffs.data, h, rhs, ws);
        out.times.push_back(snap * per);

        if (staged) {
            parallel_chunks(static_cast<std::size_t>(n_s), 16,
                            [&](std::size_t, std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    const double* ci = coeffs.data.data() + i * coeffs.n_modes;
                    double* hi = half.data() + i * static_cast<std::size_t>(m1) * l2;
                    for (int k0 = 0; k0 < m1; ++k0) {
                        for (int h2 = 0; h2 < l2; ++h2) {
                            const double* psi = phi_dim[1].data() + static_cast<std::size_t>(h2) * m1;
                            double acc = 0.0;
                            for (int k2 = 0; k2 < m1; ++k2) acc += ci[k0 + m1 * k2] * psi[k2];
                            hi[static_cast<std::size_t>(k0) * l2 + h2] = acc;
                        }
                    }
                }
            });
        }

        parallel_chunks(static_cast<std::size_t>(n_nodes), 16,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<double> v(n_s);
            std::vector<int> idx(z);
            for (std::size_t node = begin; node < end; ++node) {
                if (staged) {
                    const int p1 = static_cast<int>(node) % l1;
                    const int p2 = static_cast<int>(node) / l1;
                    const double* phi1 = phi_dim[0].data() + static_cast<std::size_t>(p1) * m1;
                    for (int i = 0; i < n_s; ++i) {
                        const double* hi = half.data() + static_cast<std::size_t>(i) * m1 * l2;
                        double acc = 0.0;
                        for (int k0 = 0; k0 < m1; ++k0)
                            acc += hi[static_cast<std::size_t>(k0) * l2 + p2] * phi1[k0];
                        v[i] = acc;
                    }
                } else {
                    std::fill(v.begin(), v.end(), 0.0);
                    for (int mode = 0; mode < coeffs.n_modes; ++mode) {
                        modes.decode(mode, idx.data());
                        double w = 1.0;
                        int rest = static_cast<int>(node);
                        for (int j = 0; j < z; ++j) {
                            const int lj = static_cast<int>(rules[j].nodes.size());
                            w *= phi_dim[j][static_cast<std::size_t>(rest % lj) * m1 + idx[j]];
                            rest /= lj;
                        }
                        const double* col = coeffs.data.data() + static_cast<std::size_t>(mode);
                        for (int i = 0; i < n_s; ++i)
                            v[i] += w * col[static_cast<std::size_t>(i) * coeffs.n_modes];
                    }
                }
                long clip = 0;
                for (double x : v)
                    if (x < range.first || x > range.second) ++clip;
                node_clipped[node] = clip;
                node_hists[node] = histogram(v, bins, range);
            }
        });

        for (int node = 0; node < n_nodes; ++node) out.clipped += node_clipped[node];

        DensityPair pair = density_moments(node_hists, node_weights);
        out.mean_density.push_back(std::move(pair.mean));
        out.std_density.push_back(std::move(pair.std));

        double am = 0.0;
        for (int i = 0; i < n_s; ++i) am += coeffs.at(i, 0, 0);
        out.agent_mean.push_back(am / n_s);
    }
    return out;
}

} // namespace rcons
