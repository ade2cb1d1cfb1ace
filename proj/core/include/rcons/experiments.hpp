#pragma once

#include <string>

#include "rcons/config.hpp"
#include "rcons/hinf.hpp"
#include "rcons/meanfield.hpp"
#include "rcons/sim.hpp"

namespace rcons {

struct Test1Result {
    MomentSeries feedback;
    MomentSeries averaged;
    std::string feedback_csv, averaged_csv;
};

struct Test2NuResult {
    double nu = 0.0;
    double c_n = 0.0;
    double recorded_c_n = 0.0;      ///< published value, 0 when absent
    double feedback_spread = 0.0;   ///< max agent distance from origin at T
    double averaged_spread = 0.0;
};

struct Test2Result {
    std::vector<Test2NuResult> runs;
    std::string summary_json;
};

struct Test3Result {
    DensityMoments feedback;
    DensityMoments averaged;
    std::string feedback_csv, averaged_csv;
};

struct CertifyResult {
    HinfCertificate certificate;
    RiccatiGains gains;
    bool sweep_performed = false;
    double sweep_norm = 0.0;           ///< full system, ones input, identity output
    double deviation_norm = 0.0;       ///< mean-free deviation dynamics
    double consensus_mode_rate = 0.0;  ///< decay rate of the agent average
    std::string json_path;
};

/// One-dimensional comparison run of both control laws; writes one
/// mean/band CSV per control.
Test1Result run_test1(const ExperimentConfig& cfg, const std::string& out_dir);

/// Two-dimensional runs over the configured penalization values; emits
/// trajectories, moment series, and a summary document holding the computed
/// robustness constants next to the recorded ones.
Test2Result run_test2(const ExperimentConfig& cfg, const std::string& out_dir);

/// Particle-ensemble density runs for both controls.
Test3Result run_test3(const ExperimentConfig& cfg, const std::string& out_dir);

/// Tabulates the closed-form robustness bound over the configured grid.
std::string run_gamma_surface(const ExperimentConfig& cfg, const std::string& out_dir);

/// Gains -> constant -> certificate -> residual -> frequency cross-check
/// (systems up to sweep_max_n agents), emitted as one JSON document.
/// On an infeasible gamma the error document is written before the
/// InfeasibleGamma exception propagates.
CertifyResult run_certify(const ExperimentConfig& cfg, double gamma, const std::string& out_dir);

} // namespace rcons
