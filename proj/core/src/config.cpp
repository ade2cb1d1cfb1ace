#include "rcons/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "rcons/rng.hpp"

namespace rcons {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

Uncertainty parse_uncertainty(const json& j, const std::string& path) {
    const std::string type = j.value("type", "");
    if (type == "gaussian") {
        if (!j.contains("sigma2"))
            throw ConfigError(path + ": gaussian input requires an explicit sigma2");
        return Uncertainty::gaussian(j.value("mu", 0.0), j.at("sigma2").get<double>());
    }
    if (type == "uniform")
        return Uncertainty::uniform(j.at("a").get<double>(), j.at("b").get<double>());
    throw ConfigError(path + ": unknown uncertainty type '" + type + "'");
}

GridSpec parse_grid(const json& j) {
    GridSpec g;
    g.lo = j.at("lo").get<double>();
    g.hi = j.at("hi").get<double>();
    g.points = j.at("points").get<int>();
    g.log_scale = j.value("scale", "linear") == "log";
    return g;
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    const json j = read_json(path);
    ExperimentConfig cfg;
    try {
        if (j.contains("model")) {
            const json& m = j.at("model");
            cfg.model.n_agents = m.value("n_agents", cfg.model.n_agents);
            cfg.model.dim = m.value("dim", cfg.model.dim);
            cfg.model.p_bar = m.value("p_bar", cfg.model.p_bar);
            cfg.model.nu = m.value("nu", cfg.model.nu);
            cfg.model.r = m.value("r", cfg.model.r);
        }
        if (j.contains("uncertainty")) {
            for (const auto& u : j.at("uncertainty"))
                cfg.uncertainty.push_back(parse_uncertainty(u, path));
            cfg.model.z = static_cast<int>(cfg.uncertainty.size());
        }
        if (j.contains("initial")) {
            const json& init = j.at("initial");
            const std::string type = init.value("type", "uniform_interval");
            if (type == "uniform_interval") {
                cfg.initial.kind = InitialLaw::Kind::UniformInterval;
                cfg.initial.low = init.at("low").get<double>();
                cfg.initial.high = init.at("high").get<double>();
            } else if (type == "disc") {
                cfg.initial.kind = InitialLaw::Kind::Disc;
                cfg.initial.center = init.at("center").get<std::vector<double>>();
                cfg.initial.radius = init.at("radius").get<double>();
            } else {
                throw ConfigError(path + ": unknown initial law '" + type + "'");
            }
        }
        if (j.contains("gpc")) cfg.gpc_order = j.at("gpc").value("order", cfg.gpc_order);
        if (j.contains("quadrature"))
            cfg.quad_points = j.at("quadrature").value("points", cfg.quad_points);
        if (j.contains("integrator")) {
            const json& it = j.at("integrator");
            cfg.dt = it.value("dt", cfg.dt);
            cfg.t_final = it.value("t_final", cfg.t_final);
            cfg.snapshots = it.value("snapshots", cfg.snapshots);
        }
        cfg.seed = j.value("seed", cfg.seed);
        if (j.contains("meanfield")) {
            const json& mf = j.at("meanfield");
            cfg.particles = mf.value("particles", cfg.particles);
            cfg.bins = mf.value("bins", cfg.bins);
        }
        if (j.contains("nu_values"))
            cfg.nu_values = j.at("nu_values").get<std::vector<double>>();
        if (j.contains("recorded_c_n"))
            for (const auto& rec : j.at("recorded_c_n"))
                cfg.recorded_c_n.push_back(
                    {rec.at("nu").get<double>(), rec.at("value").get<double>()});
        if (j.contains("surface")) {
            const json& s = j.at("surface");
            cfg.nu_grid = parse_grid(s.at("nu"));
            cfg.p_grid = parse_grid(s.at("p_bar"));
            if (s.contains("r_values"))
                cfg.r_values = s.at("r_values").get<std::vector<double>>();
            else
                cfg.r_values = {0.0};
        }
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            cfg.sweep_points = s.value("points", cfg.sweep_points);
            cfg.sweep_lo = s.value("omega_lo", cfg.sweep_lo);
            cfg.sweep_hi = s.value("omega_hi", cfg.sweep_hi);
            cfg.sweep_max_n = s.value("max_n", cfg.sweep_max_n);
        }
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

bool json_roundtrip_ok(const std::string& path) {
    try {
        const json j = read_json(path);
        return json::parse(j.dump()) == j;
    } catch (...) {
        return false;
    }
}

AgentStates sample_initial(const InitialLaw& law, const ModelParams& params,
                           std::uint64_t seed) {
    AgentStates v0(params.n_agents, params.dim);
    SplitMix64 rng(stream_seed(seed, 0xF1F1F1F1F1ULL));
    if (law.kind == InitialLaw::Kind::UniformInterval) {
        for (double& x : v0.values) x = rng.uniform(law.low, law.high);
        return v0;
    }
    if (params.dim != 2) throw ConfigError("disc initial law requires dim = 2");
    if (law.center.size() != 2) throw ConfigError("disc initial law requires a 2-entry center");
    for (int i = 0; i < params.n_agents; ++i) {
        const double radius = law.radius * std::sqrt(rng.uniform01());
        const double angle = 2.0 * 3.14159265358979323846 * rng.uniform01();
        v0.at(i, 0) = law.center[0] + radius * std::cos(angle);
        v0.at(i, 1) = law.center[1] + radius * std::sin(angle);
    }
    return v0;
}

std::vector<double> expand_grid(const GridSpec& grid) {
    if (grid.points < 1) throw ConfigError("grid needs at least one point");
    std::vector<double> out(grid.points);
    if (grid.points == 1) {
        out[0] = grid.lo;
        return out;
    }
    if (grid.log_scale) {
        const double llo = std::log10(grid.lo), lhi = std::log10(grid.hi);
        for (int i = 0; i < grid.points; ++i)
            out[i] = std::pow(10.0, llo + (lhi - llo) * i / (grid.points - 1.0));
    } else {
        for (int i = 0; i < grid.points; ++i)
            out[i] = grid.lo + (grid.hi - grid.lo) * i / (grid.points - 1.0);
    }
    return out;
}

} // namespace rcons
