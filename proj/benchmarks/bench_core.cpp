#include <benchmark/benchmark.h>

#include "rcons/gpc.hpp"
#include "rcons/hinf.hpp"
#include "rcons/quadrature.hpp"
#include "rcons/riccati.hpp"
#include "rcons/rng.hpp"
#include "rcons/sim.hpp"

using namespace rcons;

namespace {

ModelParams bench_params(int n) {
    ModelParams p;
    p.n_agents = n;
    p.p_bar = 1.0;
    p.nu = 0.01;
    p.z = 2;
    return p;
}

void GainSolve(benchmark::State& state) {
    const ModelParams params = bench_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto g = solve_finite_n_gains(params);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(GainSolve)->Arg(10)->Arg(1000)->Arg(100000);

void HermiteRule(benchmark::State& state) {
    for (auto _ : state) {
        auto rule = gauss_hermite(static_cast<int>(state.range(0)), 0.0, 5.0);
        benchmark::DoNotOptimize(rule);
    }
}
BENCHMARK(HermiteRule)->Arg(10)->Arg(40);

void ProjectedRhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params = bench_params(n);
    UncertaintySpec unc{Uncertainty::gaussian(0.0, 5.0), Uncertainty::uniform(-5.0, 5.0)};
    GpcBasis basis{unc, 10};
    std::vector<QuadratureRule> rules{rule_for(unc[0], 12), rule_for(unc[1], 12)};
    const BasisMoments moments = basis_moments(basis, rules);
    const GpcProjection proj = build_projection(basis, moments, unc);
    const RiccatiGains gains = solve_finite_n_gains(params);
    GpcCoefficients c(n, proj.modes.size(), 1), dc = c;
    SplitMix64 rng(5);
    for (double& x : c.data) x = rng.uniform(-1.0, 1.0);
    for (auto _ : state) {
        rhs_feedback_into(c, params, gains, proj, dc);
        benchmark::DoNotOptimize(dc.data.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.data.size()));
}
BENCHMARK(ProjectedRhs)->Arg(100)->Arg(10000);

void TransferNormSweep(benchmark::State& state) {
    const ModelParams params = bench_params(static_cast<int>(state.range(0)));
    const RiccatiGains gains = solve_finite_n_gains(params);
    const StateSpaceSystem sys = make_consensus_system(params, gains);
    const auto grid = log_omega_grid(1e-3, 1e3, 200);
    for (auto _ : state) {
        const double norm = hinf_norm_sweep(sys, grid);
        benchmark::DoNotOptimize(norm);
    }
}
BENCHMARK(TransferNormSweep)->Arg(5)->Arg(20)->Arg(50);

} // namespace

BENCHMARK_MAIN();
