// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "bhecho/operators.hpp"
#include "bhecho/spectra.hpp"
#include "bhecho/state_vector.hpp"

using namespace bhecho;

TEST_CASE("ground state: closed-form two-site case") {
    const FockBasis b = FockBasis::enumerate({2, 2});
    const SparseHermitian h = assemble_hamiltonian(b, {1.0, 1.0, 0.0});
    const auto [e0, psi] = ground_state(h);
    CHECK(e0 == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-10));
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ground state: J=0 Mott limit and 2U gap") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const double u = 1.3;
    const SparseHermitian h = assemble_hamiltonian(b, {0.0, u, 0.0});
    const auto [e0, psi] = ground_state(h);
    CHECK(std::abs(e0) <= 1e-12);
    const StateVector mott = mott_state(b);
    CHECK(std::abs(std::abs(overlap(mott, psi)) - 1.0) <= 1e-10);

    const SpectrumSlice s = low_spectrum(h, 2);
    CHECK(s.gap() == doctest::Approx(2.0 * u).epsilon(1e-10));
}

TEST_CASE("single-particle band: E = -2J cos(n pi / (N+1))") {
    for (int n_sites : {3, 8}) {
        const FockBasis b = FockBasis::enumerate({n_sites, 1});
        const double j = 1.0;
        const SparseHermitian h = assemble_hamiltonian(b, {j, 0.7, 0.0});
        std::vector<double> expected;
        for (int n = 1; n <= n_sites; ++n) {
            expected.push_back(-2.0 * j * std::cos(n * std::numbers::pi / (n_sites + 1)));
        }
        std::ranges::sort(expected);
        const std::vector<double> got = full_spectrum(h);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-10));
        }
    }
    const FockBasis b3 = FockBasis::enumerate({3, 1});
    const auto [e0, psi] = ground_state(assemble_hamiltonian(b3, {1.0, 0.0, 0.0}));
    CHECK(e0 == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("full spectrum of the 3x3 case") {
    const FockBasis b = FockBasis::enumerate({2, 2});
    const SparseHermitian h = assemble_hamiltonian(b, {1.0, 1.0, 0.0});
    const std::vector<double> ev = full_spectrum(h);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(1.0 - std::sqrt(5.0)).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ev[2] == doctest::Approx(1.0 + std::sqrt(5.0)).epsilon(1e-10));
}

TEST_CASE("dense and Lanczos paths agree") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const SparseHermitian h = assemble_hamiltonian(b, {0.8, 1.0, 0.1});
    const SpectrumSlice dense = low_spectrum_dense(h, 4);
    const SpectrumSlice lanczos = low_spectrum_lanczos(h, 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(dense.eigenvalues[i] - lanczos.eigenvalues[i]) <= 1e-9);
    }
}

TEST_CASE("spectrum of -H is the negated reversed spectrum of H") {
    const FockBasis b = FockBasis::enumerate({4, 4});
    const SparseHermitian h = assemble_hamiltonian(b, {1.0, 1.0, 0.0});
    const std::vector<double> ev = full_spectrum(h);
    const std::vector<double> ev_neg = full_spectrum(h.scaled(-1.0));
    REQUIRE(ev.size() == ev_neg.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
        CHECK(ev_neg[i] == doctest::Approx(-ev[ev.size() - 1 - i]).epsilon(1e-10));
    }
}

TEST_CASE("ground state overlaps the Mott state positively at J > 0") {
    const FockBasis b = FockBasis::enumerate({5, 5});
    const auto [e0, psi] = ground_state(assemble_hamiltonian(b, {0.5, 1.0, 0.0}));
    const StateVector mott = mott_state(b);
    CHECK(overlap(mott, psi).real() > 0.0);
}

TEST_CASE("spacing ratio: calibration oracles") {
    SUBCASE("equally spaced levels give r = 1") {
        std::vector<double> levels;
        for (int i = 0; i < 20; ++i) levels.push_back(0.5 * i);
        CHECK(spacing_ratio(levels).mean_r == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("Poisson spacings give r near 2 ln 2 - 1") {
        std::mt19937_64 rng(7);
        std::exponential_distribution<double> expd(1.0);
        std::vector<double> levels = {0.0};
        for (int i = 0; i < 100000; ++i) levels.push_back(levels.back() + expd(rng));
        const SpacingRatio r = spacing_ratio(levels);
        CHECK(std::abs(r.mean_r - 0.386) <= 0.01);
    }

    SUBCASE("Gaussian real-symmetric matrices give r near 0.53") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int dim = 500;
        double sum = 0.0;
        std::size_t count = 0;
        for (int sample = 0; sample < 50; ++sample) {
            Eigen::MatrixXd a(dim, dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j <= i; ++j) {
                    a(i, j) = a(j, i) = gauss(rng);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                              Eigen::EigenvaluesOnly);
            // keep the bulk third of the spectrum where the density is flat
            const auto& ev = es.eigenvalues();
            std::vector<double> bulk(ev.data() + dim / 3, ev.data() + 2 * dim / 3);
            const SpacingRatio r = spacing_ratio(bulk);
            sum += r.mean_r * static_cast<double>(r.n_ratios);
            count += r.n_ratios;
        }
        CHECK(std::abs(sum / static_cast<double>(count) - 0.53) <= 0.01);
    }
}

TEST_CASE("spacing ratio: degeneracies are excluded and counted") {
    const std::vector<double> levels = {0.0, 1.0, 1.0, 2.0, 3.5, 4.0};
    const SpacingRatio r = spacing_ratio(levels);
    CHECK(r.n_degenerate == 1);
    CHECK(r.n_ratios >= 2);
    CHECK_THROWS_AS((void)spacing_ratio(std::vector<double>{0.0, 1.0, 2.0}), DomainError);
}
