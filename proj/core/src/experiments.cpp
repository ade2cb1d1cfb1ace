#include "rcons/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "rcons/csv.hpp"
#include "rcons/riccati.hpp"

namespace rcons {

using nlohmann::json;

namespace {

std::string ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());
    return out_dir;
}

GpcBasis basis_for(const ExperimentConfig& cfg) {
    return GpcBasis{cfg.uncertainty, cfg.gpc_order};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << text;
}

} // namespace

Test1Result run_test1(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.model.dim != 1) throw ConfigError("test1 expects a one-dimensional model");
    ensure_dir(out_dir);
    const RiccatiGains gains = solve_finite_n_gains(cfg.model);
    const AgentStates v0 = sample_initial(cfg.initial, cfg.model, cfg.seed);
    const GpcBasis basis = basis_for(cfg);

    Test1Result result;
    result.feedback = run_micro_sg(cfg.model, cfg.uncertainty, basis, gains,
                                   ControlKind::Feedback, v0, cfg.t_final, cfg.dt,
                                   cfg.snapshots, cfg.quad_points);
    result.averaged = run_micro_sg(cfg.model, cfg.uncertainty, basis, gains,
                                   ControlKind::Averaged, v0, cfg.t_final, cfg.dt,
                                   cfg.snapshots, cfg.quad_points);
    result.feedback_csv = out_dir + "/test1_feedback.csv";
    result.averaged_csv = out_dir + "/test1_averaged.csv";
    write_moment_series_csv(result.feedback_csv, result.feedback);
    write_moment_series_csv(result.averaged_csv, result.averaged);
    return result;
}

namespace {

double terminal_spread(const MomentSeries& series) {
    const AgentStates& last = series.mean.back();
    double worst = 0.0;
    for (int i = 0; i < last.n_agents; ++i) {
        double r2 = 0.0;
        for (int k = 0; k < last.dim; ++k) r2 += last.at(i, k) * last.at(i, k);
        worst = std::max(worst, std::sqrt(r2));
    }
    return worst;
}

} // namespace

Test2Result run_test2(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.model.dim != 2) throw ConfigError("test2 expects a two-dimensional model");
    if (cfg.nu_values.empty()) throw ConfigError("test2 requires nu_values");
    ensure_dir(out_dir);
    const AgentStates v0 = sample_initial(cfg.initial, cfg.model, cfg.seed);
    const GpcBasis basis = basis_for(cfg);

    Test2Result result;
    json summary = json::array();
    for (double nu : cfg.nu_values) {
        ModelParams params = cfg.model;
        params.nu = nu;
        const RiccatiGains gains = solve_finite_n_gains(params);

        Test2NuResult row;
        row.nu = nu;
        row.c_n = compute_c_n(params, gains);
        for (const auto& rec : cfg.recorded_c_n)
            if (std::fabs(rec.nu - nu) < 1e-12) row.recorded_c_n = rec.value;

        const MomentSeries fb =
            run_micro_sg(params, cfg.uncertainty, basis, gains, ControlKind::Feedback, v0,
                         cfg.t_final, cfg.dt, cfg.snapshots, cfg.quad_points);
        const MomentSeries av =
            run_micro_sg(params, cfg.uncertainty, basis, gains, ControlKind::Averaged, v0,
                         cfg.t_final, cfg.dt, cfg.snapshots, cfg.quad_points);
        row.feedback_spread = terminal_spread(fb);
        row.averaged_spread = terminal_spread(av);

        const std::string tag = format_csv_value(nu);
        write_moment_series_csv(out_dir + "/test2_feedback_nu" + tag + ".csv", fb);
        write_moment_series_csv(out_dir + "/test2_averaged_nu" + tag + ".csv", av);
        write_agent_means_csv(out_dir + "/test2_trajectories_nu" + tag + ".csv", fb);

        summary.push_back({{"nu", nu},
                           {"c_n_computed", row.c_n},
                           {"c_n_recorded", row.recorded_c_n},
                           {"k_d", gains.k_d},
                           {"k_o", gains.k_o},
                           {"feedback_terminal_spread", row.feedback_spread},
                           {"averaged_terminal_spread", row.averaged_spread}});
        result.runs.push_back(row);
    }
    result.summary_json = out_dir + "/test2_summary.json";
    write_text(result.summary_json, json{{"runs", summary}}.dump(2) + "\n");
    return result;
}

Test3Result run_test3(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.model.dim != 1) throw ConfigError("test3 expects a one-dimensional model");
    ensure_dir(out_dir);
    ModelParams params = cfg.model;
    params.n_agents = cfg.particles;
    const RiccatiGains gains = solve_finite_n_gains(params);
    const AgentStates v0 = sample_initial(cfg.initial, params, cfg.seed);
    const GpcBasis basis = basis_for(cfg);

    Test3Result result;
    result.feedback =
        run_mc_sg(params, cfg.uncertainty, basis, gains, ControlKind::Feedback, v0,
                  cfg.t_final, cfg.dt, cfg.bins, cfg.quad_points, cfg.seed, cfg.snapshots);
    result.averaged =
        run_mc_sg(params, cfg.uncertainty, basis, gains, ControlKind::Averaged, v0,
                  cfg.t_final, cfg.dt, cfg.bins, cfg.quad_points, cfg.seed, cfg.snapshots);
    result.feedback_csv = out_dir + "/test3_feedback_density.csv";
    result.averaged_csv = out_dir + "/test3_averaged_density.csv";
    write_density_csv(result.feedback_csv, result.feedback);
    write_density_csv(result.averaged_csv, result.averaged);
    return result;
}

std::string run_gamma_surface(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.nu_grid.points < 1 || cfg.p_grid.points < 1)
        throw ConfigError("gamma-surface requires a surface grid");
    ensure_dir(out_dir);
    const std::vector<double> nus = expand_grid(cfg.nu_grid);
    const std::vector<double> ps = expand_grid(cfg.p_grid);
    const std::vector<double> rs = cfg.r_values.empty() ? std::vector<double>{0.0} : cfg.r_values;

    const std::string path = out_dir + "/gamma_surface.csv";
    CsvWriter out(path, {"nu", "p_bar", "r", "gamma"});
    for (double r : rs)
        for (double p : ps)
            for (double nu : nus) out.row({nu, p, r, gamma_lower_bound(p, nu, r)});
    return path;
}

CertifyResult run_certify(const ExperimentConfig& cfg, double gamma, const std::string& out_dir) {
    ensure_dir(out_dir);
    const std::string path = out_dir + "/certificate.json";
    const RiccatiGains gains = solve_finite_n_gains(cfg.model);
    const double c_n = compute_c_n(cfg.model, gains);

    CertifyResult result;
    result.gains = gains;
    result.json_path = path;
    try {
        result.certificate = certify(cfg.model, gains, gamma);
    } catch (const InfeasibleGamma& e) {
        write_text(path, json{{"error", "infeasible_gamma"},
                              {"gamma", e.gamma},
                              {"gamma_min", e.gamma_min}}
                             .dump(2) +
                             "\n");
        throw;
    }

    json doc{{"model",
              {{"n_agents", cfg.model.n_agents},
               {"p_bar", cfg.model.p_bar},
               {"nu", cfg.model.nu},
               {"r", cfg.model.r},
               {"z", cfg.model.z}}},
             {"gains", {{"k_d", gains.k_d}, {"k_o", gains.k_o}, {"s", gains.s}}},
             {"c_n", c_n},
             {"gamma", gamma},
             {"gamma_min", 1.0 / c_n},
             {"certificate",
              {{"lambda_minus", result.certificate.lambda_minus},
               {"lambda_plus", result.certificate.lambda_plus},
               {"x_d", result.certificate.x_d},
               {"x_o_tilde", result.certificate.x_o_tilde},
               {"positive_definite", result.certificate.positive_definite},
               {"are_residual_max_entry", result.certificate.residual_norm}}}};

    if (cfg.model.n_agents <= cfg.sweep_max_n) {
        result.sweep_performed = true;
        const StateSpaceSystem sys = make_consensus_system(cfg.model, gains);
        const std::vector<double> grid =
            log_omega_grid(cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_points);
        result.sweep_norm = hinf_norm_sweep(sys, grid);

        // deviation dynamics: mean-free projector on both ends
        const int n = cfg.model.n_agents;
        StateSpaceSystem dev = sys;
        Mat proj = Mat::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) proj(i, j) -= 1.0 / n;
        dev.b = proj;
        dev.c = proj;
        dev.d = Mat(n, n);
        result.deviation_norm = hinf_norm_sweep(dev, grid);

        const double alpha = (n - 1.0) / n;
        result.consensus_mode_rate = (gains.k_d + alpha * gains.k_o) / cfg.model.nu;
        doc["sweep"] = {{"omega_points", cfg.sweep_points},
                        {"omega_lo", cfg.sweep_lo},
                        {"omega_hi", cfg.sweep_hi},
                        {"norm", result.sweep_norm},
                        {"norm_le_gamma", result.sweep_norm <= gamma},
                        {"deviation_norm", result.deviation_norm},
                        {"deviation_norm_le_gamma", result.deviation_norm <= gamma},
                        {"consensus_mode_rate", result.consensus_mode_rate}};
    } else {
        doc["sweep"] = {{"performed", false},
                        {"reason", "n_agents above sweep_max_n"}};
    }

    write_text(path, doc.dump(2) + "\n");
    return result;
}

} // namespace rcons
