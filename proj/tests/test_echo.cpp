// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "bhecho/analysis.hpp"
#include "bhecho/echo.hpp"
#include "bhecho/spectra.hpp"
#include "dense_oracle.hpp"

using namespace bhecho;

namespace {

std::vector<double> linear_grid(double t_max, int points) {
    std::vector<double> t;
    for (int i = 0; i < points; ++i) t.push_back(t_max * i / (points - 1));
    return t;
}

}  // namespace

TEST_CASE("scenario perturbations: operator-algebra identities") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const BhmParams base{1.0, 1.0, 0.0};

    SUBCASE("delta_j_symmetric: Delta = dJ * T") {
        const Scenario s = make_scenario(ops, ScenarioKind::delta_j_symmetric, base, 0.05);
        CHECK(max_abs_diff(s.perturbation, ops.hopping.scaled(0.05)) <= 1e-12);
    }
    SUBCASE("delta_j_oneleg: Delta = -dJ * T") {
        const Scenario s = make_scenario(ops, ScenarioKind::delta_j_oneleg, base, 0.05);
        CHECK(max_abs_diff(s.perturbation, ops.hopping.scaled(-0.05)) <= 1e-12);
    }
    SUBCASE("delta_u: Delta = dU * D_int") {
        const Scenario s = make_scenario(ops, ScenarioKind::delta_u, base, 0.2);
        const SparseHermitian expected =
            SparseHermitian::diagonal(b.tag(), ops.interaction.values).scaled(0.2);
        CHECK(max_abs_diff(s.perturbation, expected) <= 1e-12);
    }
    SUBCASE("gravity: Delta = 2 F * D_tilt") {
        const Scenario s = make_scenario(ops, ScenarioKind::gravity, base, 0.1);
        const SparseHermitian expected =
            SparseHermitian::diagonal(b.tag(), ops.tilt.values).scaled(0.2);
        CHECK(max_abs_diff(s.perturbation, expected) <= 1e-12);
    }
    SUBCASE("ideal: Delta = 0") {
        const Scenario s = make_scenario(ops, ScenarioKind::ideal, base, 0.0);
        CHECK(s.perturbation.max_abs() <= 1e-15);
    }
    SUBCASE("nonzero base tilt is rejected") {
        CHECK_THROWS_AS(make_scenario(ops, ScenarioKind::ideal, {1.0, 1.0, 0.1}, 0.0),
                        ConfigError);
    }
}

TEST_CASE("ideal echo: f = 1 on the whole grid") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const Scenario s = make_scenario(ops, ScenarioKind::ideal, {1.0, 1.0, 0.0}, 0.0);
    const auto [e0, psi] = ground_state(s.forward);
    const EchoCurve curve = echo_curve(psi, s, linear_grid(10.0, 50));
    CHECK(curve.fidelity.front() == 1.0);  // t = 0 exactly
    for (double f : curve.fidelity_raw) CHECK(std::abs(1.0 - f) <= 1e-8);
}

TEST_CASE("echo matches a dense two-leg evaluation of the definition") {
    const FockBasis b = FockBasis::enumerate({2, 2});
    const LatticeOperators ops = LatticeOperators::build(b);
    const Scenario s = make_scenario(ops, ScenarioKind::delta_u, {1.0, 1.0, 0.0}, 0.2);
    const auto [e0, psi] = ground_state(ops.assemble({1.0, 1.0, 0.0}));

    const std::vector<double> grid = linear_grid(5.0, 40);
    const EchoCurve curve = echo_curve(psi, s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // literal two-leg form: exp(-i H_b t) exp(-i H_f t) psi0
        const Eigen::VectorXcd leg1 =
            testing::dense_evolved(s.forward, psi.amplitudes, grid[i]);
        const Eigen::VectorXcd leg2 = testing::dense_evolved(s.backward, leg1, grid[i]);
        const double f_ref = std::norm(psi.amplitudes.dot(leg2));
        CHECK(std::abs(curve.fidelity_raw[i] - f_ref) <= 1e-9);
    }
}

TEST_CASE("echo grid must ascend from zero") {
    const FockBasis b = FockBasis::enumerate({3, 3});
    const LatticeOperators ops = LatticeOperators::build(b);
    const Scenario s = make_scenario(ops, ScenarioKind::ideal, {1.0, 1.0, 0.0}, 0.0);
    const StateVector psi = mott_state(b);
    const std::vector<double> bad = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS((void)echo_curve(psi, s, bad), DomainError);
}

TEST_CASE("short-time law: [1 - f] / t^2 approaches Var(Delta)") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const Scenario s =
        make_scenario(ops, ScenarioKind::delta_j_symmetric, {1.0, 1.0, 0.0}, 0.05);
    const auto [e0, psi] = ground_state(ops.assemble({1.0, 1.0, 0.0}));
    const double var = variance_oracle(psi, s);
    const std::vector<double> grid = {0.0, 1e-2};
    const EchoCurve curve = echo_curve(psi, s, grid);
    const double rate = (1.0 - curve.fidelity_raw[1]) / (1e-2 * 1e-2);
    CHECK(std::abs(rate / var - 1.0) <= 0.02);
}

TEST_CASE("sequence echo: ideal imprint reproduces perfect reversal") {
    const FockBasis b = FockBasis::enumerate({5, 5});
    const LatticeOperators ops = LatticeOperators::build(b);
    const StateVector psi = mott_state(b);
    SequenceSpec seq;
    seq.J = 1.0;
    seq.U = 1.0;
    const SequenceResult r =
        sequence_echo(b, ops, psi, seq, linear_grid(5.0, 25));
    for (double f : r.curve.fidelity_raw) CHECK(std::abs(1.0 - f) <= 1e-8);
}

TEST_CASE("sequence echo: frozen-lattice pulse equals the ideal imprint") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const StateVector psi = mott_state(b);
    const std::vector<double> grid = linear_grid(3.0, 10);

    SequenceSpec ideal;
    ideal.J = 1.0;
    ideal.U = 1.0;
    ideal.delta_u = 0.05;

    SequenceSpec pulsed = ideal;
    pulsed.imprint = SequenceSpec::Imprint::pulsed;
    pulsed.pulse_tilt = std::numbers::pi / 0.01;
    pulsed.pulse_duration = 0.01;  // F_pulse * tau = pi
    pulsed.freeze_lattice_during_pulse = true;

    const SequenceResult a = sequence_echo(b, ops, psi, ideal, grid);
    const SequenceResult c = sequence_echo(b, ops, psi, pulsed, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(a.curve.fidelity_raw[i] - c.curve.fidelity_raw[i]) <= 1e-10);
    }
}

TEST_CASE("sequence echo: active-lattice pulse error grows with tau") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const StateVector psi = mott_state(b);
    const std::vector<double> grid = {0.0, 2.0};

    double prev_error = -1.0;
    for (double tau : {1e-3, 1e-2, 1e-1}) {
        SequenceSpec seq;
        seq.J = 1.0;
        seq.U = 1.0;
        seq.imprint = SequenceSpec::Imprint::pulsed;
        seq.pulse_duration = tau;
        seq.pulse_tilt = std::numbers::pi / tau;
        const SequenceResult r = sequence_echo(b, ops, psi, seq, grid);
        const double error = 1.0 - r.curve.fidelity[1];
        CHECK(error > prev_error);
        prev_error = error;
    }
}

TEST_CASE("sequence echo: pulsed imprint requires a positive duration") {
    const FockBasis b = FockBasis::enumerate({3, 3});
    const LatticeOperators ops = LatticeOperators::build(b);
    const StateVector psi = mott_state(b);
    SequenceSpec seq;
    seq.imprint = SequenceSpec::Imprint::pulsed;
    seq.pulse_tilt = 1.0;
    const std::vector<double> grid = {0.0, 1.0};
    CHECK_THROWS_AS((void)sequence_echo(b, ops, psi, seq, grid), ConfigError);
}

TEST_CASE("scenario kind names round-trip") {
    for (ScenarioKind k : {ScenarioKind::ideal, ScenarioKind::delta_j_symmetric,
                           ScenarioKind::delta_j_oneleg, ScenarioKind::delta_u,
                           ScenarioKind::gravity}) {
        CHECK(scenario_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS((void)scenario_kind_from_string("nonsense"), ConfigError);
}
