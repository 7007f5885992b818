// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/fock_basis.hpp"

#include <algorithm>
#include <atomic>
#include <compare>
#include <numeric>
#include <ostream>

namespace bhecho {

namespace {

std::uint64_t next_tag() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

// Descending lexicographic order, first site most significant.
bool lex_greater(std::span<const int> a, std::span<const int> b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

double fock_dimension(int n_sites, int n_bosons) {
    // binom(N + M - 1, M) via the multiplicative formula
    double dim = 1.0;
    for (int k = 1; k <= n_bosons; ++k) {
        dim *= static_cast<double>(n_sites - 1 + k) / static_cast<double>(k);
    }
    return dim;
}

FockBasis FockBasis::enumerate(const LatticeSpec& spec, std::size_t state_cap) {
    if (spec.n_sites < 1) {
        throw ConfigError("FockBasis: n_sites must be >= 1");
    }
    if (spec.n_bosons < 0) {
        throw ConfigError("FockBasis: n_bosons must be >= 0");
    }
    const double est = fock_dimension(spec.n_sites, spec.n_bosons);
    if (est > static_cast<double>(state_cap) * (1.0 + 1e-9)) {
        throw DimensionError("FockBasis: state count " + std::to_string(est) +
                             " exceeds cap " + std::to_string(state_cap));
    }

    FockBasis basis;
    basis.spec_ = spec;
    basis.tag_ = next_tag();

    const int n = spec.n_sites;
    std::vector<int> current(static_cast<std::size_t>(n), 0);
    // Recursive descent emits states in descending lexicographic order.
    auto emit = [&](auto&& self, int site, int remaining) -> void {
        if (site == n - 1) {
            current[static_cast<std::size_t>(site)] = remaining;
            basis.occ_.insert(basis.occ_.end(), current.begin(), current.end());
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            current[static_cast<std::size_t>(site)] = k;
            self(self, site + 1, remaining - k);
        }
    };
    emit(emit, 0, spec.n_bosons);
    basis.dim_ = basis.occ_.size() / static_cast<std::size_t>(n);
    return basis;
}

std::span<const int> FockBasis::state_at(std::size_t index) const {
    if (index >= dim_) {
        throw LookupError("FockBasis: index " + std::to_string(index) +
                          " out of range (dim " + std::to_string(dim_) + ")");
    }
    const std::size_t n = static_cast<std::size_t>(spec_.n_sites);
    return {occ_.data() + index * n, n};
}

std::size_t FockBasis::index_of(std::span<const int> occupations) const {
    const std::size_t n = static_cast<std::size_t>(spec_.n_sites);
    if (occupations.size() != n) {
        throw LookupError("FockBasis: state has wrong site count");
    }
    int total = 0;
    for (int v : occupations) {
        if (v < 0) throw LookupError("FockBasis: negative occupation");
        total += v;
    }
    if (total != spec_.n_bosons) {
        throw LookupError("FockBasis: state has wrong particle number");
    }

    std::size_t lo = 0, hi = dim_;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (lex_greater(state_at(mid), occupations)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < dim_ && std::ranges::equal(state_at(lo), occupations)) {
        return lo;
    }
    throw LookupError("FockBasis: state not found");
}

void FockBasis::dump_csv(std::ostream& os) const {
    const std::size_t n = static_cast<std::size_t>(spec_.n_sites);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) os << ',';
            os << occ_[i * n + j];
        }
        os << '\n';
    }
}

}  // namespace bhecho
