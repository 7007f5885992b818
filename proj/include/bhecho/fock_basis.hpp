// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bhecho/errors.hpp"

namespace bhecho {

/// 1-D open chain of bosonic lattice sites. Sites are 0-based, the
/// nearest-neighbor bonds are (i, i+1) for i = 0..n_sites-2, and the
/// lattice spacing is 1 in simulation units.
struct LatticeSpec {
    int n_sites = 1;
    int n_bosons = 0;
};

/// Number of Fock configurations of `n_bosons` bosons on `n_sites` sites,
/// computed in floating point (exact for desk-scale lattices, used for the
/// overflow pre-check).
double fock_dimension(int n_sites, int n_bosons);

/// Ordered set of boson occupation configurations at fixed particle number,
/// with a bidirectional index map. States are sorted by descending
/// lexicographic order on the occupation vector (first site most
/// significant), so the first state is (M, 0, ..., 0).
///
/// Immutable after construction; safe to share across threads.
class FockBasis {
public:
    static constexpr std::size_t kDefaultStateCap = 200000;

    /// Enumerates the basis. Throws DimensionError when the state count
    /// would exceed `state_cap`.
    static FockBasis enumerate(const LatticeSpec& spec,
                               std::size_t state_cap = kDefaultStateCap);

    std::size_t dim() const { return dim_; }
    const LatticeSpec& spec() const { return spec_; }
    int n_sites() const { return spec_.n_sites; }
    int n_bosons() const { return spec_.n_bosons; }

    /// Unique identifier of this basis instance, used to reject
    /// compositions of operators and states built on different bases.
    std::uint64_t tag() const { return tag_; }

    std::span<const int> state_at(std::size_t index) const;

    /// Inverse of state_at. Throws LookupError for states with the wrong
    /// site count, wrong particle number, or that are otherwise unknown.
    std::size_t index_of(std::span<const int> occupations) const;

    /// One row per state, comma-separated occupations.
    void dump_csv(std::ostream& os) const;

private:
    FockBasis() = default;

    LatticeSpec spec_;
    std::size_t dim_ = 0;
    std::vector<int> occ_;  // dim * n_sites, flattened row-major
    std::uint64_t tag_ = 0;
};

}  // namespace bhecho
