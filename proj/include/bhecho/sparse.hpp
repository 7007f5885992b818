// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bhecho/errors.hpp"

namespace bhecho {

using Complex = std::complex<double>;

struct Triplet {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    Complex value;
};

/// Sparse Hermitian matrix in compressed-row storage, tagged with the basis
/// it acts on. All operators in this codebase are assembled symmetrically,
/// so Hermiticity holds entrywise; hermiticity_defect() verifies it.
///
/// Immutable after construction; safe to share across threads.
class SparseHermitian {
public:
    SparseHermitian() = default;

    /// Builds from (row, col, value) triplets; duplicates are summed.
    static SparseHermitian from_triplets(std::size_t dim, std::uint64_t basis_tag,
                                         std::vector<Triplet> triplets);

    static SparseHermitian diagonal(std::uint64_t basis_tag,
                                    std::span<const double> values);

    std::size_t dim() const { return dim_; }
    std::uint64_t basis_tag() const { return tag_; }
    std::size_t nonzeros() const { return val_.size(); }

    /// y = A x
    void apply(std::span<const Complex> x, std::span<Complex> y) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

    SparseHermitian scaled(double factor) const;

    /// A + factor * diag(values)
    SparseHermitian plus_diagonal(std::span<const double> values,
                                  double factor = 1.0) const;

    /// Entry lookup, O(log nnz per row); zero when absent.
    Complex coeff(std::size_t row, std::size_t col) const;

    double hermiticity_defect() const;  ///< max |A - A^dagger| entry
    double max_abs() const;             ///< max |A_ij|
    double one_norm() const;            ///< max absolute row sum

    Eigen::MatrixXcd to_dense() const;

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::uint32_t>& cols() const { return col_; }
    const std::vector<Complex>& values() const { return val_; }

private:
    std::size_t dim_ = 0;
    std::uint64_t tag_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<Complex> val_;
};

/// Entrywise sum; both operands must share dimension and basis tag.
SparseHermitian add(const SparseHermitian& a, const SparseHermitian& b);

/// Max |A - B| entry over the union pattern.
double max_abs_diff(const SparseHermitian& a, const SparseHermitian& b);

struct DiagonalOperator {
    std::uint64_t basis_tag = 0;
    std::vector<double> values;
};

struct DiagonalUnitary {
    std::uint64_t basis_tag = 0;
    std::vector<Complex> values;

    /// max ||u_k| - 1|
    double unitarity_defect() const;
};

/// P A P^dagger for a diagonal unitary P (same sparsity pattern as A).
SparseHermitian conjugated_by(const DiagonalUnitary& p, const SparseHermitian& a);

}  // namespace bhecho
