#include <doctest.h>

#include <cmath>

#include "rcons/meanfield.hpp"
#include "rcons/riccati.hpp"
#include "rcons/rng.hpp"

using namespace rcons;

TEST_CASE("histogram: point mass, normalization, clipping, empty input") {
    {
        const Histogram h = histogram({0.5, 0.5, 0.5}, 4, {0.0, 1.0});
        CHECK(h.mass[2] == doctest::Approx(4.0)); // density 1/width in one bin
        CHECK(h.mass[0] == 0.0);
        CHECK(h.integral() == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        // out-of-range samples land in the end bins, mass is conserved
        const Histogram h = histogram({-5.0, 0.5, 9.0}, 2, {0.0, 1.0});
        CHECK(h.integral() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(h.mass[0] > 0.0);
        CHECK(h.mass[1] > 0.0);
    }
    CHECK_THROWS_AS(histogram({}, 4, {0.0, 1.0}), EmptyInput);
}

TEST_CASE("histogram of uniform samples is flat") {
    SplitMix64 rng(19);
    std::vector<double> samples(1000000);
    for (double& s : samples) s = rng.uniform(2.0, 7.0);
    const Histogram h = histogram(samples, 20, {2.0, 7.0});
    CHECK(h.integral() == doctest::Approx(1.0).epsilon(1e-12));
    for (double m : h.mass) CHECK(std::fabs(m - 0.2) / 0.2 < 0.05);
}

TEST_CASE("density moments: degenerate family and a two-node hand case") {
    Histogram h;
    h.edges = {0.0, 1.0, 2.0};
    h.mass = {0.6, 0.4};
    {
        const DensityPair p = density_moments({h, h, h}, {0.2, 0.5, 0.3});
        CHECK(p.mean[0] == doctest::Approx(0.6).epsilon(1e-13));
        CHECK(p.std[0] == doctest::Approx(0.0).epsilon(1e-7));
    }
    {
        Histogram g;
        g.edges = {0.0, 1.0, 2.0};
        g.mass = {1.0, 0.0};
        const DensityPair p = density_moments({h, g}, {0.25, 0.75});
        const double mean0 = 0.25 * 0.6 + 0.75 * 1.0;
        const double second0 = 0.25 * 0.36 + 0.75 * 1.0;
        CHECK(p.mean[0] == doctest::Approx(mean0).epsilon(1e-13));
        CHECK(p.std[0] == doctest::Approx(std::sqrt(second0 - mean0 * mean0)).epsilon(1e-12));
        // combined density still integrates to one
        double mass = 0.0;
        for (std::size_t b = 0; b < p.mean.size(); ++b) mass += p.mean[b];
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

namespace {

struct SmallRun {
    ModelParams params;
    UncertaintySpec unc;
    GpcBasis basis;
    RiccatiGains gains;
    AgentStates v0;
};

SmallRun small_run(int particles, UncertaintySpec unc, std::uint64_t seed = 23) {
    SmallRun r{ModelParams{}, unc, GpcBasis{unc, 3}, RiccatiGains{}, AgentStates{}};
    r.params.n_agents = particles;
    r.params.p_bar = 1.0;
    r.params.nu = 0.01;
    r.params.z = static_cast<int>(unc.size());
    r.gains = solve_finite_n_gains(r.params);
    r.v0 = AgentStates(particles, 1);
    SplitMix64 rng(seed);
    for (double& x : r.v0.values) x = rng.uniform(10.0, 20.0);
    return r;
}

} // namespace

TEST_CASE("particle-ensemble density: mass, particle-mean consistency, determinism") {
    SmallRun r = small_run(800, {Uncertainty::gaussian(0.0, 5.0), Uncertainty::uniform(-5.0, 5.0)});
    const int bins = 40, snaps = 10;
    const DensityMoments d = run_mc_sg(r.params, r.unc, r.basis, r.gains,
                                       ControlKind::Feedback, r.v0, 1.0, 1e-2, bins, 8, 23, snaps);
    const double width = d.edges[1] - d.edges[0];
    REQUIRE(static_cast<int>(d.times.size()) == snaps + 1);
    for (int t = 0; t <= snaps; ++t) {
        double mass = 0.0, first = 0.0;
        for (int b = 0; b < bins; ++b) {
            CHECK(d.mean_density[t][b] >= 0.0);
            CHECK(d.std_density[t][b] >= 0.0);
            const double center = 0.5 * (d.edges[b] + d.edges[b + 1]);
            mass += d.mean_density[t][b] * width;
            first += center * d.mean_density[t][b] * width;
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::fabs(first - d.agent_mean[t]) <= width);
    }
    CHECK(d.clipped == 0);

    const DensityMoments d2 = run_mc_sg(r.params, r.unc, r.basis, r.gains,
                                        ControlKind::Feedback, r.v0, 1.0, 1e-2, bins, 8, 23, snaps);
    for (int t = 0; t <= snaps; ++t)
        for (int b = 0; b < bins; ++b)
            CHECK(d.mean_density[t][b] == d2.mean_density[t][b]);
}

TEST_CASE("near-degenerate inputs produce a deterministic density") {
    SmallRun r = small_run(500, {Uncertainty::gaussian(0.0, 1e-30),
                                 Uncertainty::uniform(-1e-15, 1e-15)});
    const DensityMoments d = run_mc_sg(r.params, r.unc, r.basis, r.gains,
                                       ControlKind::Feedback, r.v0, 1.0, 1e-2, 30, 6, 1, 5);
    for (const auto& row : d.std_density)
        for (double s : row) CHECK(std::fabs(s) < 1e-8);
}

TEST_CASE("feedback concentrates the terminal density more than the averaged control") {
    SmallRun r = small_run(2000, {Uncertainty::gaussian(0.0, 5.0), Uncertainty::uniform(-5.0, 5.0)});
    const int bins = 50;
    const DensityMoments fb = run_mc_sg(r.params, r.unc, r.basis, r.gains,
                                        ControlKind::Feedback, r.v0, 1.0, 5e-3, bins, 8, 2, 8);
    const DensityMoments av = run_mc_sg(r.params, r.unc, r.basis, r.gains,
                                        ControlKind::Averaged, r.v0, 1.0, 5e-3, bins, 8, 2, 8);

    auto mass_near_zero = [&](const DensityMoments& d) {
        double m = 0.0;
        const double width = d.edges[1] - d.edges[0];
        const std::size_t last = d.times.size() - 1;
        for (std::size_t b = 0; b + 1 < d.edges.size(); ++b) {
            const double center = 0.5 * (d.edges[b] + d.edges[b + 1]);
            if (std::fabs(center) < 1.0) m += d.mean_density[last][b] * width;
        }
        return m;
    };
    CHECK(mass_near_zero(fb) > mass_near_zero(av));
}
