// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "bhecho/fock_basis.hpp"
#include "bhecho/sparse.hpp"

namespace bhecho {

/// Complex amplitude vector over a FockBasis.
struct StateVector {
    std::uint64_t basis_tag = 0;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
    void normalize() { amplitudes /= amplitudes.norm(); }
};

/// Basis state with amplitude 1 on the given occupation configuration.
StateVector fock_state(const FockBasis& basis, std::span<const int> occupations);

/// Unit-filling Mott configuration (M/N bosons per site); requires M
/// divisible by N.
StateVector mott_state(const FockBasis& basis);

/// <a|b>
Complex overlap(const StateVector& a, const StateVector& b);

/// <psi|A|psi>, real part (A Hermitian).
double expectation(const SparseHermitian& a, const StateVector& psi);

/// Multiply by a diagonal unitary in place.
void apply_diagonal(const DiagonalUnitary& u, StateVector& psi);

}  // namespace bhecho
