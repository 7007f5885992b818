// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"

#include "bhecho/analysis.hpp"
#include "bhecho/spectra.hpp"

using namespace bhecho;

namespace {

EchoCurve synthetic_curve(const std::vector<double>& t,
                          double (*model)(double)) {
    EchoCurve c;
    c.times = t;
    for (double ti : t) {
        const double f = model(ti);
        c.fidelity.push_back(std::clamp(f, 0.0, 1.0));
        c.fidelity_raw.push_back(f);
    }
    return c;
}

}  // namespace

TEST_CASE("fit_decay: gaussian model self-consistency") {
    const std::vector<double> t = fit_time_grid(2.0, 100);
    const EchoCurve c =
        synthetic_curve(t, [](double x) { return std::exp(-0.3 * x * x); });
    const DecayFit fit = fit_decay(c, DecayModel::gaussian);
    CHECK(std::abs(fit.parameter - 0.3) <= 1e-6);
}

TEST_CASE("fit_decay: quartic model self-consistency") {
    std::vector<double> t;
    for (int i = 0; i < 60; ++i) t.push_back(1.0 * i / 59.0);  // stays in validity
    const EchoCurve c =
        synthetic_curve(t, [](double x) { return 1.0 - 0.01 * x * x * x * x; });
    const DecayFit fit = fit_decay(c, DecayModel::quartic);
    CHECK(std::abs(fit.parameter - 0.01) <= 1e-4);
}

TEST_CASE("fit_decay: error cases") {
    std::vector<double> t = {0.0, 0.1, 0.2};
    const EchoCurve tiny =
        synthetic_curve(t, [](double x) { return std::exp(-x * x); });
    CHECK_THROWS_AS((void)fit_decay(tiny, DecayModel::gaussian), FitError);

    const std::vector<double> flat_t = fit_time_grid(2.0, 60);
    const EchoCurve flat = synthetic_curve(flat_t, [](double) { return 1.0; });
    CHECK_THROWS_AS((void)fit_decay(flat, DecayModel::gaussian), FitError);
}

TEST_CASE("variance oracle: closed forms on the Mott state") {
    for (int n : {4, 6}) {
        const FockBasis b = FockBasis::enumerate({n, n});
        const LatticeOperators ops = LatticeOperators::build(b);
        const StateVector mott = mott_state(b);
        const double dj = 0.05;
        const Scenario s =
            make_scenario(ops, ScenarioKind::delta_j_symmetric, {0.0, 1.0, 0.0}, dj);
        CHECK(variance_oracle(mott, s) ==
              doctest::Approx(4.0 * (n - 1) * dj * dj).epsilon(1e-12));

        // diagonal perturbations have zero variance on a Fock state
        const Scenario su = make_scenario(ops, ScenarioKind::delta_u, {1.0, 1.0, 0.0}, 0.2);
        CHECK(std::abs(variance_oracle(mott, su)) <= 1e-12);
        const Scenario sg = make_scenario(ops, ScenarioKind::gravity, {1.0, 1.0, 0.0}, 0.1);
        CHECK(std::abs(variance_oracle(mott, sg)) <= 1e-12);
    }
}

TEST_CASE("fitted alpha matches the variance oracle at J = 0") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const LatticeOperators ops = LatticeOperators::build(b);
    const Scenario s =
        make_scenario(ops, ScenarioKind::delta_j_symmetric, {0.0, 1.0, 0.0}, 0.05);
    const auto [e0, psi] = ground_state(ops.assemble({0.0, 1.0, 0.0}));
    const EchoCurve curve = auto_echo_curve(psi, s);
    const DecayFit fit = fit_decay(curve, DecayModel::gaussian);
    const double oracle = variance_oracle(psi, s);
    CHECK(std::abs(fit.parameter / oracle - 1.0) <= 0.02);
}

TEST_CASE("perturbative predictions: closed-form values") {
    const Prediction pu = perturbative_prediction(PerturbationKind::delta_u, 1.0, 0.2, 0.1);
    CHECK(pu.fidelity == doctest::Approx(0.999996).epsilon(1e-12));
    CHECK(pu.within_validity);

    const Prediction pg = perturbative_prediction(PerturbationKind::gravity, 1.0, 0.1, 0.1);
    CHECK(pg.fidelity == doctest::Approx(0.999996).epsilon(1e-12));

    const Prediction pj = perturbative_prediction(PerturbationKind::delta_j, 1.0, 0.05, 0.0);
    CHECK(pj.fidelity == 1.0);

    // far outside the validity window the value is still returned, flagged
    const Prediction far = perturbative_prediction(PerturbationKind::delta_j, 1.0, 0.05, 1e4);
    CHECK_FALSE(far.within_validity);
}

TEST_CASE("loglog_slope recovers synthetic power laws") {
    std::vector<double> t = fit_time_grid(0.5, 80);
    const EchoCurve quartic =
        synthetic_curve(t, [](double x) { return 1.0 - 0.02 * x * x * x * x; });
    CHECK(std::abs(loglog_slope(quartic, 1e-9, 1e-3) - 4.0) <= 1e-6);

    const EchoCurve quadratic =
        synthetic_curve(t, [](double x) { return 1.0 - 0.02 * x * x; });
    CHECK(std::abs(loglog_slope(quadratic, 1e-9, 1e-3) - 2.0) <= 1e-6);
}

TEST_CASE("scattering length: Feshbach formula") {
    const FeshbachParams fp{2.0, 1.0, 0.5};
    CHECK(std::abs(scattering_length(fp, fp.B0 + fp.delta_B)) <= 1e-12);
    CHECK(scattering_length(fp, 1e9) == doctest::Approx(fp.a_bg).epsilon(1e-6));
    CHECK_THROWS_AS((void)scattering_length(fp, fp.B0), DomainError);
}

TEST_CASE("fit_time_grid: shape") {
    const std::vector<double> t = fit_time_grid(3.0, 50);
    REQUIRE(t.size() >= 50);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == doctest::Approx(3.0).epsilon(1e-12));
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
}

TEST_CASE("critical_scan: small smoke scan") {
    const std::vector<double> grid = {0.0, 0.1, 0.2, 0.3};
    ScanOptions opt;
    opt.threads = 2;
    const CriticalScan scan = critical_scan(3, grid, opt);
    REQUIRE(scan.points.size() == 4);
    CHECK(scan.all_ok());
    CHECK(scan.points[0].alpha_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(scan.points[0].alpha_raw /
                       CriticalScan::alpha0_oracle(3, opt.delta_j) -
                   1.0) <= 0.02);
    CHECK(scan.points[0].gap == doctest::Approx(2.0).epsilon(1e-9));
    // normalized rate decreases toward the superfluid side
    CHECK(scan.points[3].alpha_norm < scan.points[0].alpha_norm);
    CHECK(CriticalScan::alpha0_literature_convention(3, opt.delta_j) ==
          doctest::Approx(CriticalScan::alpha0_oracle(3, opt.delta_j) / 4.0));
}
