// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/state_vector.hpp"

namespace bhecho {

StateVector fock_state(const FockBasis& basis, std::span<const int> occupations) {
    StateVector psi;
    psi.basis_tag = basis.tag();
    psi.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
    psi.amplitudes[static_cast<Eigen::Index>(basis.index_of(occupations))] = Complex{1.0, 0.0};
    return psi;
}

StateVector mott_state(const FockBasis& basis) {
    const int n = basis.n_sites();
    const int m = basis.n_bosons();
    if (n == 0 || m % n != 0) {
        throw DomainError("mott_state: filling must be integer (M divisible by N)");
    }
    std::vector<int> occ(static_cast<std::size_t>(n), m / n);
    return fock_state(basis, occ);
}

Complex overlap(const StateVector& a, const StateVector& b) {
    if (a.basis_tag != b.basis_tag) {
        throw CompositionError("overlap: states on different bases");
    }
    return a.amplitudes.dot(b.amplitudes);  // conjugates a
}

double expectation(const SparseHermitian& a, const StateVector& psi) {
    if (a.basis_tag() != psi.basis_tag) {
        throw CompositionError("expectation: operator and state on different bases");
    }
    return psi.amplitudes.dot(a.apply(psi.amplitudes)).real();
}

void apply_diagonal(const DiagonalUnitary& u, StateVector& psi) {
    if (u.basis_tag != psi.basis_tag) {
        throw CompositionError("apply_diagonal: unitary and state on different bases");
    }
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
        psi.amplitudes[i] *= u.values[static_cast<std::size_t>(i)];
    }
}

}  // namespace bhecho
