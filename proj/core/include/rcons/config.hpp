#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcons/model.hpp"

namespace rcons {

struct InitialLaw {
    enum class Kind { UniformInterval, Disc };
    Kind kind = Kind::UniformInterval;
    double low = 0.0, high = 1.0;       ///< interval law, per coordinate
    std::vector<double> center;         ///< disc law (two coordinates)
    double radius = 1.0;
};

struct GridSpec {
    double lo = 0.0, hi = 1.0;
    int points = 2;
    bool log_scale = false;
};

struct RecordedValue {
    double nu = 0.0;
    double value = 0.0;
};

/// Everything a run reads comes from here; command code holds no numbers.
struct ExperimentConfig {
    ModelParams model;
    UncertaintySpec uncertainty;
    InitialLaw initial;
    int gpc_order = 10;
    int quad_points = 40;
    double dt = 1e-3;
    double t_final = 1.0;
    int snapshots = 100;
    std::uint64_t seed = 0;

    int particles = 10000; ///< particle-ensemble runs
    int bins = 50;

    std::vector<double> nu_values;           ///< two-dimensional comparison runs
    std::vector<RecordedValue> recorded_c_n; ///< published reference values

    GridSpec nu_grid, p_grid;   ///< bound-surface tabulation
    std::vector<double> r_values;

    int sweep_points = 2000;
    double sweep_lo = 1e-3, sweep_hi = 1e3;
    int sweep_max_n = 50; ///< skip the frequency sweep above this agent count
};

/// Parses a JSON config file. Unknown keys are ignored; missing sections keep
/// their defaults. Throws ConfigError with path context.
ExperimentConfig load_config(const std::string& path);

/// Parse + reserialize check used to guard emitted documents.
bool json_roundtrip_ok(const std::string& path);

/// Draws the configured initial agent states.
AgentStates sample_initial(const InitialLaw& law, const ModelParams& params, std::uint64_t seed);

std::vector<double> expand_grid(const GridSpec& grid);

} // namespace rcons
