// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsense/experiments.hpp"

using namespace qsense;

namespace {

// The Fig.-3-style operating point used throughout.
Scenario base_scenario(double polarization, bool with_spam,
                       Scenario::Model model = Scenario::Model::NvDrive) {
    Scenario s;
    s.model = model;
    s.probe = ProbeSpec{polarization};
    s.target = DriveParams{2 * M_PI * 11.2, 0.0, M_PI / 2};
    s.sequence.dwell = 0.03;
    s.sequence.hyperfine = -2 * M_PI * 2.16;
    s.sequence.control = derive_control(s.target);
    s.sequence.pi_pulse_phases = {
        compensating_pulse_phase(s.target.delta, s.sequence.dwell), 0.0};
    s.sequence.rotation = RotationAngles::uniform_readout();
    s.sequence.n_loops = 1;
    if (with_spam) s.spam = SpamModel{polarization, 0.20, 0.15, 0.025};
    s.noise = NoiseSpec::averaged(0.02);
    return s;
}

}  // namespace

TEST_CASE("scenario validation") {
    Scenario s = base_scenario(0.85, true);
    CHECK_NOTHROW(s.validate());

    Scenario bad = s;
    bad.model = Scenario::Model::IdealVectorField;
    CHECK_THROWS_AS(bad.validate(), ConfigError);  // SPAM with the ideal model

    bad = s;
    bad.sequence.dwell = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = s;
    bad.probe.polarization_population = 1.2;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("sweep with no sensing loops is flat") {
    Scenario s = base_scenario(0.85, true);
    s.sequence.n_loops = 0;
    std::vector<double> grid;
    for (int i = 0; i < 7; ++i) grid.push_back(2 * M_PI * (8.0 + i));
    const auto rows = sweep_signal(s, TargetAxis::Omega, grid);
    REQUIRE(rows.size() == grid.size());
    for (const auto& r : rows)
        for (int j = 0; j < 3; ++j) CHECK(r.signals[j] == rows[0].signals[j]);
    // ... and equals the leakage-transformed uniform point.
    CHECK(rows[0].signals[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rows[0].signals[1] == doctest::Approx(0.20625).epsilon(1e-12));
    CHECK(rows[0].signals[2] == doctest::Approx(0.1625).epsilon(1e-12));

    CHECK_THROWS_AS(sweep_signal(s, TargetAxis::Omega, {}), InvalidPoints);
}

TEST_CASE("sweep slope matches the Jacobian and scales with N") {
    Scenario s = base_scenario(1.0, false);
    s.sequence.n_loops = 4;
    const double phi0 = s.target.phi;
    const double h = kDefaultFdStep * std::max(1.0, std::abs(phi0));
    const auto rows = sweep_signal(s, TargetAxis::Phi, {phi0 - h, phi0, phi0 + h});

    const SignalsFn f = [&s](const std::array<double, 3>& th) {
        return scenario_signals(s, DriveParams{th[0], th[1], th[2]}, 4);
    };
    const Mat3 jac =
        jacobian_fd(f, {s.target.omega, s.target.delta, s.target.phi}, kDefaultFdStep);
    for (int i = 0; i < 3; ++i) {
        const double slope = (rows[2].signals[i] - rows[0].signals[i]) / (2 * h);
        CHECK(std::abs(slope - jac.at(i, 2)) <= 0.02 * std::abs(jac.at(i, 2)));
    }

    // Linear response: N = 8 slopes are 8x the N = 1 slopes within 10%.
    Scenario s8 = s, s1 = s;
    s8.sequence.n_loops = 8;
    s1.sequence.n_loops = 1;
    const SignalsFn f8 = [&s8](const std::array<double, 3>& th) {
        return scenario_signals(s8, DriveParams{th[0], th[1], th[2]}, 8);
    };
    const SignalsFn f1 = [&s1](const std::array<double, 3>& th) {
        return scenario_signals(s1, DriveParams{th[0], th[1], th[2]}, 1);
    };
    const auto theta0 = std::array<double, 3>{s.target.omega, s.target.delta, s.target.phi};
    const Mat3 j8 = jacobian_fd(f8, theta0, kDefaultFdStep);
    const Mat3 j1 = jacobian_fd(f1, theta0, kDefaultFdStep);
    for (int i = 0; i < 9; ++i)
        if (std::abs(j1.m[i]) > 1e-3)
            CHECK(std::abs(j8.m[i] / j1.m[i] - 8.0) < 0.8);
}

TEST_CASE("sensitivity scaling is linear in N") {
    const std::vector<int> ns{1, 2, 4, 8, 16};
    for (bool with_spam : {false, true}) {
        Scenario s = base_scenario(with_spam ? 0.85 : 1.0, with_spam);
        const auto rows = sensitivity_vs_n(s, ns);
        REQUIRE(rows.size() == ns.size());
        for (int j = 0; j < 3; ++j) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& r : rows) pts.emplace_back(r.n_loops, r.dtheta[j]);
            const auto fit = fit_power_law(pts);
            CHECK(fit.exponent > 0.9);
            CHECK(fit.exponent < 1.1);
        }
    }
}

TEST_CASE("SPAM never improves the sensitivity") {
    Scenario with = base_scenario(0.85, true);
    Scenario without = base_scenario(0.85, false);
    const std::vector<int> ns{1, 4, 16};
    const auto rows_with = sensitivity_vs_n(with, ns);
    const auto rows_without = sensitivity_vs_n(without, ns);
    for (size_t i = 0; i < ns.size(); ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(rows_with[i].dtheta[j] >= rows_without[i].dtheta[j]);
}

TEST_CASE("probe degeneracy surfaces as SingularJacobian") {
    Scenario s = base_scenario(0.5, false, Scenario::Model::IdealVectorField);
    CHECK_THROWS_AS(sensitivity_vs_n(s, {1}), SingularJacobian);

    Scenario nv = base_scenario(0.5, false);
    CHECK_THROWS_AS(sensitivity_vs_n(nv, {1}), SingularJacobian);

    Scenario low = base_scenario(0.51, false, Scenario::Model::IdealVectorField);
    Scenario full = base_scenario(1.0, false, Scenario::Model::IdealVectorField);
    const std::vector<int> ns{1, 2, 4, 8, 16};
    const auto rows_low = sensitivity_vs_n(low, ns);
    const auto rows_full = sensitivity_vs_n(full, ns);
    for (size_t i = 0; i < ns.size(); ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(rows_low[i].dtheta[j] > rows_full[i].dtheta[j]);
}

TEST_CASE("fit_power_law") {
    std::vector<std::pair<double, double>> exact;
    for (int n : {1, 2, 4, 8, 16}) exact.emplace_back(n, 3.7 / n);
    auto fit = fit_power_law(exact);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.stderr_ < 1e-12);

    std::vector<std::pair<double, double>> sqrt_law;
    for (int n : {1, 2, 4, 8, 16}) sqrt_law.emplace_back(n, 2.0 / std::sqrt(n));
    CHECK(fit_power_law(sqrt_law).exponent == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(61);
    std::vector<std::pair<double, double>> noisy;
    for (int n : {1, 2, 4, 8, 16, 32})
        noisy.emplace_back(n, (5.0 / n) * (1.0 + 0.01 * test::uniform(rng, -1.0, 1.0)));
    const auto nf = fit_power_law(noisy);
    CHECK(nf.exponent > 0.95);
    CHECK(nf.exponent < 1.05);

    CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 0.5}}), InvalidPoints);
    CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 0.5}, {3, -0.1}}), InvalidPoints);
}

TEST_CASE("sensitivity map landscape") {
    const std::vector<double> b_grid{0.0, 0.4, 0.9};
    const std::vector<double> t_grid{0.8, 1.6};

    const auto plain = sensitivity_map(NoiseSpec::averaged(0.01), std::nullopt, b_grid,
                                       t_grid, M_PI / 4, M_PI / 4);
    REQUIRE(plain.size() == 6);
    CHECK(std::isinf(plain[0].fom));  // B = 0, unrotated
    CHECK(std::isinf(plain[1].fom));

    const auto rotated = sensitivity_map(NoiseSpec::averaged(0.01),
                                         RotationAngles::uniform_readout(), b_grid, t_grid,
                                         M_PI / 4, M_PI / 4);
    CHECK(rotated[0].fom == doctest::Approx(6 * 1e-4 / 0.64).epsilon(1e-6));
    CHECK(rotated[1].fom == doctest::Approx(6 * 1e-4 / 2.56).epsilon(1e-6));

    // Closed-form cross-check at an interior point of the unrotated map.
    const double b = 0.4, t = 1.6, al = M_PI / 4, be = M_PI / 4, sg = 0.01;
    const double s2 = std::pow(std::sin(b * t), 2);
    const double want =
        sg * sg / s2 / (4 * t * t) *
        (1.0 / std::pow(std::cos(b * t), 2) +
         b * b * t * t / s2 *
             ((1.0 / std::pow(std::sin(al), 2)) *
                  (3.0 / std::pow(std::sin(be), 2) + 1.0 / std::pow(std::cos(be), 2)) +
              std::pow(std::tan(al), 2)));
    double got = 0.0;
    for (const auto& mp : plain)
        if (mp.b == 0.4 && mp.t == 1.6) got = mp.fom;
    CHECK(std::abs(got - want) / want < 1e-6);

    // Single-shot map: also diverges at B = 0 without rotation, finite with.
    const auto ss_plain = sensitivity_map(NoiseSpec::single_shot(1, 0.01), std::nullopt,
                                          b_grid, t_grid, M_PI / 4, M_PI / 4);
    CHECK(std::isinf(ss_plain[0].fom));
    const auto ss_rot = sensitivity_map(NoiseSpec::single_shot(1, 0.01),
                                        RotationAngles::uniform_readout(), b_grid, t_grid,
                                        M_PI / 4, M_PI / 4);
    CHECK(std::isfinite(ss_rot[0].fom));
}

TEST_CASE("rotation objective and its optimum") {
    const double sigma0 = 0.02, t = 1.0;
    const double unit = sigma0 * sigma0 / (t * t);

    const double at_uniform =
        zero_field_rotated_objective(RotationAngles::uniform_readout(), sigma0, 1, t);
    CHECK(std::abs(at_uniform - 6.0 * unit) / (6.0 * unit) < 1e-6);

    // Independent check against the closed-form objective at random angles.
    std::mt19937_64 rng(62);
    for (int rep = 0; rep < 5; ++rep) {
        const RotationAngles r{test::uniform(rng, 0.5, 2.2), test::uniform(rng, 0.3, 1.2),
                               test::uniform(rng, 0.25, 0.75)};
        const double csc2c = 1.0 / std::pow(std::sin(M_PI * r.c / 2), 2);
        const double sec2c = 1.0 / std::pow(std::cos(M_PI * r.c / 2), 2);
        const double csc2a = 1.0 / std::pow(std::sin(r.a), 2);
        const double sec2a = 1.0 / std::pow(std::cos(r.a), 2);
        const double csc2b = 1.0 / std::pow(std::sin(r.b), 2);
        const double sec2b = 1.0 / std::pow(std::cos(r.b), 2);
        const double closed =
            sigma0 * sigma0 * (csc2c * (csc2a * (3 * csc2b + sec2b) + sec2a) + sec2c) /
            (4 * t * t);
        const double numeric = zero_field_rotated_objective(r, sigma0, 1, t);
        CHECK(std::abs(numeric - closed) / closed < 1e-6);
    }

    const RotationOptimum opt = optimize_rotation(sigma0, 1, t, 12, 7);
    const double want = 1.5 * (std::sqrt(3.0) + 2.0) * unit;
    CHECK(std::abs(opt.value - want) / want < 1e-6);
    CHECK(opt.value <= at_uniform);  // never above the uniform start

    // Stationarity under small coordinate perturbations.
    for (int j = 0; j < 3; ++j) {
        RotationAngles r = opt.angles;
        (j == 0 ? r.a : j == 1 ? r.b : r.c) += 1e-5;
        const double perturbed = zero_field_rotated_objective(r, sigma0, 1, t);
        CHECK(perturbed >= opt.value - 1e-12);
        CHECK(std::abs(perturbed - opt.value) / opt.value < 1e-8);
    }

    // The analytic optimum angles give the same value (symmetry orbit).
    const RotationAngles analytic{std::atan(std::sqrt(std::sqrt(3.0) + 1.0)),
                                  std::atan(std::pow(3.0, 0.25)),
                                  2.0 / M_PI * std::atan(std::sqrt(std::sqrt(3.0) + 2.0))};
    const double at_analytic = zero_field_rotated_objective(analytic, sigma0, 1, t);
    CHECK(std::abs(at_analytic - want) / want < 1e-6);
}

TEST_CASE("strategy comparison") {
    const double sigma0 = 0.02, t = 1.0;
    const int n = 3;
    const StrategyReport r = compare_strategies(sigma0, n, t, 0);
    const double unit = sigma0 * sigma0 / (n * t * t);
    CHECK(r.sequential_single == doctest::Approx(9.0 * unit).epsilon(1e-12));
    CHECK(std::abs(r.uniform_rotated - 6.0 * unit) / (6.0 * unit) < 1e-6);
    CHECK(std::abs(r.optimal_rotated - 1.5 * (std::sqrt(3.0) + 2.0) * unit) /
              (1.5 * (std::sqrt(3.0) + 2.0) * unit) < 1e-6);
    CHECK(r.optimal_rotated < r.uniform_rotated);
    CHECK(r.uniform_rotated < r.sequential_single);
    CHECK(r.projection_simultaneous == doctest::Approx(3.0 / (4.0 * n * t * t)));
    CHECK(r.projection_sequential == doctest::Approx(9.0 / (4.0 * n * t * t)));
    CHECK(r.projection_simultaneous < r.projection_sequential);

    // 1/T^2 family: doubling T divides every entry by 4.
    const StrategyReport r2 = compare_strategies(sigma0, n, 2 * t, 0);
    CHECK(r2.sequential_single == doctest::Approx(r.sequential_single / 4).epsilon(1e-10));
    CHECK(r2.uniform_rotated == doctest::Approx(r.uniform_rotated / 4).epsilon(1e-6));
    CHECK(r2.optimal_rotated == doctest::Approx(r.optimal_rotated / 4).epsilon(1e-6));
    CHECK(r2.projection_sequential ==
          doctest::Approx(r.projection_sequential / 4).epsilon(1e-12));
}

TEST_CASE("projection versus averaged readout") {
    Scenario s = base_scenario(1.0, false, Scenario::Model::IdealVectorField);
    s.noise = NoiseSpec::averaged(0.02);
    s.noise.n = 3000000;  // shots for the projection branch

    const std::vector<int> ns{1, 2, 4, 8, 16};
    const auto rows = projection_vs_shot(s, ns);
    REQUIRE(rows.size() == ns.size());
    for (const auto& r : rows)
        for (int j = 0; j < 3; ++j) CHECK(r.projection[j] < r.shot[j]);

    for (int j = 0; j < 3; ++j) {
        std::vector<std::pair<double, double>> proj_pts, shot_pts;
        for (const auto& r : rows) {
            proj_pts.emplace_back(r.n_loops, r.projection[j]);
            shot_pts.emplace_back(r.n_loops, r.shot[j]);
        }
        const auto pf = fit_power_law(proj_pts);
        const auto sf = fit_power_law(shot_pts);
        CHECK(pf.exponent > 0.9);
        CHECK(pf.exponent < 1.1);
        CHECK(sf.exponent > 0.9);
        CHECK(sf.exponent < 1.1);
    }

    // With sigma -> 0 the averaged model approaches the projection model only
    // when its exact option carries the projection term.
    Scenario tiny = s;
    tiny.noise = NoiseSpec::averaged(1e-9);
    tiny.noise.n = 1000;
    tiny.noise.include_projection_term = true;
    Scenario proj_only = s;
    proj_only.noise = NoiseSpec::quantum_projection(1000);
    const auto exact_rows = sensitivity_vs_n(tiny, {4});
    const auto proj_rows = sensitivity_vs_n(proj_only, {4});
    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(exact_rows[0].dtheta[j] - proj_rows[0].dtheta[j]) <
              1e-6 * proj_rows[0].dtheta[j]);
    Scenario tiny_plain = s;
    tiny_plain.noise = NoiseSpec::averaged(1e-9);
    const auto plain_rows = sensitivity_vs_n(tiny_plain, {4});
    for (int j = 0; j < 3; ++j)
        CHECK(plain_rows[0].dtheta[j] < 0.01 * proj_rows[0].dtheta[j]);
}

TEST_CASE("determinism of the pipelines") {
    Scenario s = base_scenario(0.85, true);
    const auto a = sensitivity_vs_n(s, {1, 4});
    const auto b = sensitivity_vs_n(s, {1, 4});
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < 3; ++j) CHECK(a[i].dtheta[j] == b[i].dtheta[j]);

    const auto o1 = optimize_rotation(0.02, 1, 1.0, 5, 123);
    const auto o2 = optimize_rotation(0.02, 1, 1.0, 5, 123);
    CHECK(o1.value == o2.value);
    CHECK(o1.angles.a == o2.angles.a);
}
