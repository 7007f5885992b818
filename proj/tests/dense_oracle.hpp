// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bhecho/sparse.hpp"

namespace bhecho::testing {

/// Dense matrix-exponential propagation via full eigendecomposition:
/// psi(t) = V exp(-i diag(lambda) t) V^dagger psi. Independent of the
/// Krylov propagator; used as the cross-check oracle.
inline Eigen::VectorXcd dense_evolved(const SparseHermitian& h,
                                      const Eigen::VectorXcd& psi, double t) {
    const Eigen::MatrixXcd dense = h.to_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd coeffs = v.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::exp(std::complex<double>(0.0, -lam[k] * t));
    }
    return v * coeffs;
}

}  // namespace bhecho::testing
