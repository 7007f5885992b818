// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bhecho/fock_basis.hpp"
#include "bhecho/sparse.hpp"

namespace bhecho {

/// Bose-Hubbard parameters in units of U (hbar = 1, d = 1):
///   H = -J * T + U * sum_i n_i(n_i - 1) + F * sum_j j n_j
/// The interaction carries no factor 1/2; J_c = 0.52 U in the thermodynamic
/// limit with this convention. Any coefficient may be negative.
struct BhmParams {
    double J = 0.0;
    double U = 0.0;
    double F = 0.0;
};

/// Hopping operator T = sum over chain bonds of (a_i^dagger a_j + h.c.),
/// coefficient stripped. <m| a_i^dagger a_j |n> = sqrt(n_j (n_i + 1)).
SparseHermitian build_hopping(const FockBasis& basis);

/// Diagonal of sum_i n_i (n_i - 1).
DiagonalOperator build_interaction(const FockBasis& basis);

/// Diagonal of sum_j j n_j, 0-based site index.
DiagonalOperator build_tilt(const FockBasis& basis);

/// Diagonal unitary exp(-i phi sum_j j n_j). At phi = pi it conjugates the
/// hopping term to its negative and leaves every diagonal operator fixed.
DiagonalUnitary phase_imprint(const FockBasis& basis, double phase_per_site);

/// The three structural operators of a basis, built once and reused across
/// parameter scans.
struct LatticeOperators {
    std::uint64_t basis_tag = 0;
    std::size_t dim = 0;
    int n_sites = 0;
    SparseHermitian hopping;
    DiagonalOperator interaction;
    DiagonalOperator tilt;

    static LatticeOperators build(const FockBasis& basis);

    /// -J * T + U * D_int + F * D_tilt
    SparseHermitian assemble(const BhmParams& params) const;
};

/// Convenience one-shot assembly.
SparseHermitian assemble_hamiltonian(const FockBasis& basis, const BhmParams& params);

}  // namespace bhecho
