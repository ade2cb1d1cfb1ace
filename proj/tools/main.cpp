#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rcons/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "config file (JSON)")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
}

rcons::ExperimentConfig load(const CommonArgs& args) {
    rcons::ExperimentConfig cfg = rcons::load_config(args.config);
    if (args.seed_set) cfg.seed = args.seed;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust-consensus: stabilizing controls for interacting agent systems "
                 "with additive random inputs"};
    app.require_subcommand(1);

    CommonArgs test1_args, test2_args, test3_args, surface_args, certify_args;
    double gamma = 0.0;

    add_common(app.add_subcommand("test1", "1D comparison of both control laws"), test1_args);
    add_common(app.add_subcommand("test2", "2D disc runs over penalization values"), test2_args);
    add_common(app.add_subcommand("test3", "particle-ensemble density runs"), test3_args);
    add_common(app.add_subcommand("gamma-surface", "tabulate the robustness bound"),
               surface_args);
    CLI::App* certify = app.add_subcommand("certify", "emit a robustness certificate");
    add_common(certify, certify_args);
    certify->add_option("--gamma", gamma, "robustness level to certify")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("test1")) {
            const auto r = rcons::run_test1(load(test1_args), test1_args.out);
            std::printf("wrote %s\nwrote %s\n", r.feedback_csv.c_str(), r.averaged_csv.c_str());
        } else if (app.got_subcommand("test2")) {
            const auto r = rcons::run_test2(load(test2_args), test2_args.out);
            for (const auto& run : r.runs)
                std::printf("nu=%g  c_n=%.6g  recorded=%.6g  spread(feedback)=%.4g  "
                            "spread(averaged)=%.4g\n",
                            run.nu, run.c_n, run.recorded_c_n, run.feedback_spread,
                            run.averaged_spread);
            std::printf("wrote %s\n", r.summary_json.c_str());
        } else if (app.got_subcommand("test3")) {
            const auto r = rcons::run_test3(load(test3_args), test3_args.out);
            std::printf("wrote %s\nwrote %s\n", r.feedback_csv.c_str(), r.averaged_csv.c_str());
        } else if (app.got_subcommand("gamma-surface")) {
            const auto path = rcons::run_gamma_surface(load(surface_args), surface_args.out);
            std::printf("wrote %s\n", path.c_str());
        } else if (app.got_subcommand("certify")) {
            const auto r = rcons::run_certify(load(certify_args), gamma, certify_args.out);
            std::printf("c_n=%.6g  lambda=[%.6g, %.6g]  residual=%.3e\n",
                        r.certificate.c_n, r.certificate.lambda_minus,
                        r.certificate.lambda_plus, r.certificate.residual_norm);
            if (r.sweep_performed)
                std::printf("sweep norm=%.6g  deviation norm=%.6g  (gamma=%.6g)\n",
                            r.sweep_norm, r.deviation_norm, gamma);
            std::printf("wrote %s\n", r.json_path.c_str());
        }
    } catch (const rcons::InfeasibleGamma& e) {
        std::fprintf(stderr, "infeasible gamma: %s\n", e.what());
        return 4;
    } catch (const rcons::NonConvergence& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const rcons::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
