// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "bhecho/sparse.hpp"
#include "bhecho/state_vector.hpp"

namespace bhecho {

struct EigOptions {
    double tol = 1e-10;           ///< residual tolerance ||Hv - lambda v||
    int max_subspace = 400;       ///< Lanczos basis cap
    std::uint64_t seed = 12345;   ///< start-vector seed
    std::size_t max_dense_dim = 2000;  ///< dispatch threshold for the dense path
};

/// Low-lying eigenpairs, residual-verified, eigenvalues ascending.
struct SpectrumSlice {
    std::vector<double> eigenvalues;
    std::vector<Eigen::VectorXcd> eigenvectors;
    std::vector<double> residuals;

    double gap() const;  ///< lambda_1 - lambda_0; requires >= 2 eigenvalues
    bool degenerate_ground(double tol = 1e-10) const;
};

/// k lowest eigenpairs. Dispatches to the dense eigendecomposition for
/// dim <= max_dense_dim, Lanczos with full reorthogonalization otherwise.
SpectrumSlice low_spectrum(const SparseHermitian& h, int k, const EigOptions& opt = {});

SpectrumSlice low_spectrum_dense(const SparseHermitian& h, int k);
SpectrumSlice low_spectrum_lanczos(const SparseHermitian& h, int k, const EigOptions& opt = {});

/// Ground-state energy and vector. The vector's phase is gauge-fixed so its
/// largest-magnitude amplitude is real positive.
std::pair<double, StateVector> ground_state(const SparseHermitian& h, const EigOptions& opt = {});

/// Full spectrum via the dense path; throws DimensionError above max_dense_dim.
std::vector<double> full_spectrum(const SparseHermitian& h, std::size_t max_dense_dim = 2000);

/// Mean consecutive-spacing ratio r_n = min(s_n, s_{n+1}) / max(s_n, s_{n+1}).
/// Spacings below degeneracy_tol are excluded from the ratio chain and counted.
struct SpacingRatio {
    double mean_r = 0.0;
    std::size_t n_ratios = 0;
    std::size_t n_degenerate = 0;
};
SpacingRatio spacing_ratio(std::span<const double> levels, double degeneracy_tol = 1e-12);

}  // namespace bhecho
