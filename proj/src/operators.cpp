// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/operators.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace bhecho {

SparseHermitian build_hopping(const FockBasis& basis) {
    const int n = basis.n_sites();
    std::vector<Triplet> trips;
    trips.reserve(basis.dim() * static_cast<std::size_t>(2 * std::max(n - 1, 0)));
    std::vector<int> scratch(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const auto occ = basis.state_at(s);
        for (int bond = 0; bond + 1 < n; ++bond) {
            // hop across the bond in both directions
            for (const auto& [from, to] : {std::pair{bond + 1, bond}, std::pair{bond, bond + 1}}) {
                const int nf = occ[static_cast<std::size_t>(from)];
                const int nt = occ[static_cast<std::size_t>(to)];
                if (nf == 0) continue;
                std::copy(occ.begin(), occ.end(), scratch.begin());
                --scratch[static_cast<std::size_t>(from)];
                ++scratch[static_cast<std::size_t>(to)];
                const std::size_t target = basis.index_of(scratch);
                const double amp = std::sqrt(static_cast<double>(nf) * (nt + 1));
                trips.push_back({static_cast<std::uint32_t>(target),
                                 static_cast<std::uint32_t>(s), Complex{amp, 0.0}});
            }
        }
    }
    return SparseHermitian::from_triplets(basis.dim(), basis.tag(), std::move(trips));
}

DiagonalOperator build_interaction(const FockBasis& basis) {
    DiagonalOperator d;
    d.basis_tag = basis.tag();
    d.values.resize(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        double v = 0.0;
        for (int nj : basis.state_at(s)) v += static_cast<double>(nj) * (nj - 1);
        d.values[s] = v;
    }
    return d;
}

DiagonalOperator build_tilt(const FockBasis& basis) {
    DiagonalOperator d;
    d.basis_tag = basis.tag();
    d.values.resize(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const auto occ = basis.state_at(s);
        double v = 0.0;
        for (std::size_t j = 0; j < occ.size(); ++j) v += static_cast<double>(j) * occ[j];
        d.values[s] = v;
    }
    return d;
}

DiagonalUnitary phase_imprint(const FockBasis& basis, double phase_per_site) {
    if (!std::isfinite(phase_per_site)) {
        throw DomainError("phase_imprint: phase must be finite");
    }
    const DiagonalOperator tilt = build_tilt(basis);
    DiagonalUnitary u;
    u.basis_tag = basis.tag();
    u.values.resize(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        u.values[s] = std::polar(1.0, -phase_per_site * tilt.values[s]);
    }
    return u;
}

LatticeOperators LatticeOperators::build(const FockBasis& basis) {
    LatticeOperators ops;
    ops.basis_tag = basis.tag();
    ops.dim = basis.dim();
    ops.n_sites = basis.n_sites();
    ops.hopping = build_hopping(basis);
    ops.interaction = build_interaction(basis);
    ops.tilt = build_tilt(basis);
    return ops;
}

SparseHermitian LatticeOperators::assemble(const BhmParams& params) const {
    if (interaction.basis_tag != basis_tag || tilt.basis_tag != basis_tag) {
        throw CompositionError("LatticeOperators: mixed basis tags");
    }
    SparseHermitian h = hopping.scaled(-params.J).plus_diagonal(interaction.values, params.U);
    if (params.F != 0.0) {
        h = h.plus_diagonal(tilt.values, params.F);
    }
    return h;
}

SparseHermitian assemble_hamiltonian(const FockBasis& basis, const BhmParams& params) {
    return LatticeOperators::build(basis).assemble(params);
}

}  // namespace bhecho
