// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace bhecho {

SparseHermitian SparseHermitian::from_triplets(std::size_t dim, std::uint64_t basis_tag,
                                               std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row >= dim || t.col >= dim) {
            throw DomainError("SparseHermitian: triplet index out of range");
        }
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseHermitian m;
    m.dim_ = dim;
    m.tag_ = basis_tag;
    m.row_ptr_.assign(dim + 1, 0);
    m.col_.reserve(triplets.size());
    m.val_.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size();) {
        const std::uint32_t r = triplets[i].row;
        const std::uint32_t c = triplets[i].col;
        Complex v = triplets[i].value;
        std::size_t j = i + 1;
        while (j < triplets.size() && triplets[j].row == r && triplets[j].col == c) {
            v += triplets[j].value;
            ++j;
        }
        m.col_.push_back(c);
        m.val_.push_back(v);
        ++m.row_ptr_[r + 1];
        i = j;
    }
    for (std::size_t r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

SparseHermitian SparseHermitian::diagonal(std::uint64_t basis_tag,
                                          std::span<const double> values) {
    SparseHermitian m;
    m.dim_ = values.size();
    m.tag_ = basis_tag;
    m.row_ptr_.resize(m.dim_ + 1);
    m.col_.resize(m.dim_);
    m.val_.resize(m.dim_);
    for (std::size_t i = 0; i < m.dim_; ++i) {
        m.row_ptr_[i] = i;
        m.col_[i] = static_cast<std::uint32_t>(i);
        m.val_[i] = values[i];
    }
    m.row_ptr_[m.dim_] = m.dim_;
    return m;
}

void SparseHermitian::apply(std::span<const Complex> x, std::span<Complex> y) const {
    if (x.size() != dim_ || y.size() != dim_) {
        throw CompositionError("SparseHermitian::apply: size mismatch");
    }
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            acc += val_[k] * x[col_[k]];
        }
        y[r] = acc;
    }
}

Eigen::VectorXcd SparseHermitian::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y(static_cast<Eigen::Index>(dim_));
    apply({x.data(), static_cast<std::size_t>(x.size())},
          {y.data(), static_cast<std::size_t>(y.size())});
    return y;
}

SparseHermitian SparseHermitian::scaled(double factor) const {
    SparseHermitian m = *this;
    for (auto& v : m.val_) v *= factor;
    return m;
}

SparseHermitian SparseHermitian::plus_diagonal(std::span<const double> values,
                                               double factor) const {
    if (values.size() != dim_) {
        throw CompositionError("plus_diagonal: diagonal length mismatch");
    }
    SparseHermitian m;
    m.dim_ = dim_;
    m.tag_ = tag_;
    m.row_ptr_.assign(dim_ + 1, 0);
    m.col_.reserve(col_.size() + dim_);
    m.val_.reserve(val_.size() + dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        bool placed = false;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const std::uint32_t c = col_[k];
            if (!placed && c >= r) {
                if (c == r) {
                    m.col_.push_back(c);
                    m.val_.push_back(val_[k] + factor * values[r]);
                    placed = true;
                    continue;
                }
                m.col_.push_back(static_cast<std::uint32_t>(r));
                m.val_.push_back(factor * values[r]);
                placed = true;
            }
            m.col_.push_back(c);
            m.val_.push_back(val_[k]);
        }
        if (!placed) {
            m.col_.push_back(static_cast<std::uint32_t>(r));
            m.val_.push_back(factor * values[r]);
        }
        m.row_ptr_[r + 1] = m.col_.size();
    }
    return m;
}

Complex SparseHermitian::coeff(std::size_t row, std::size_t col) const {
    const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
    if (it != last && *it == col) {
        return val_[static_cast<std::size_t>(it - col_.begin())];
    }
    return {0.0, 0.0};
}

double SparseHermitian::hermiticity_defect() const {
    double defect = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const Complex mirror = coeff(col_[k], r);
            defect = std::max(defect, std::abs(val_[k] - std::conj(mirror)));
        }
    }
    return defect;
}

double SparseHermitian::max_abs() const {
    double m = 0.0;
    for (const auto& v : val_) m = std::max(m, std::abs(v));
    return m;
}

double SparseHermitian::one_norm() const {
    double best = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(val_[k]);
        best = std::max(best, s);
    }
    return best;
}

Eigen::MatrixXcd SparseHermitian::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                                static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_[k])) += val_[k];
        }
    }
    return m;
}

SparseHermitian add(const SparseHermitian& a, const SparseHermitian& b) {
    if (a.dim() != b.dim()) throw CompositionError("add: dimension mismatch");
    if (a.basis_tag() != b.basis_tag()) {
        throw CompositionError("add: operators built on different bases");
    }
    std::vector<Triplet> trips;
    trips.reserve(a.nonzeros() + b.nonzeros());
    for (const SparseHermitian* m : {&a, &b}) {
        for (std::size_t r = 0; r < m->dim(); ++r) {
            for (std::size_t k = m->row_ptr()[r]; k < m->row_ptr()[r + 1]; ++k) {
                trips.push_back({static_cast<std::uint32_t>(r), m->cols()[k], m->values()[k]});
            }
        }
    }
    return SparseHermitian::from_triplets(a.dim(), a.basis_tag(), std::move(trips));
}

double max_abs_diff(const SparseHermitian& a, const SparseHermitian& b) {
    if (a.dim() != b.dim()) throw CompositionError("max_abs_diff: dimension mismatch");
    double d = 0.0;
    for (const SparseHermitian* m : {&a, &b}) {
        for (std::size_t r = 0; r < m->dim(); ++r) {
            for (std::size_t k = m->row_ptr()[r]; k < m->row_ptr()[r + 1]; ++k) {
                d = std::max(d, std::abs(a.coeff(r, m->cols()[k]) - b.coeff(r, m->cols()[k])));
            }
        }
    }
    return d;
}

double DiagonalUnitary::unitarity_defect() const {
    double d = 0.0;
    for (const auto& u : values) d = std::max(d, std::abs(std::abs(u) - 1.0));
    return d;
}

SparseHermitian conjugated_by(const DiagonalUnitary& p, const SparseHermitian& a) {
    if (p.values.size() != a.dim()) {
        throw CompositionError("conjugated_by: dimension mismatch");
    }
    std::vector<Triplet> trips;
    trips.reserve(a.nonzeros());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
            const std::uint32_t c = a.cols()[k];
            trips.push_back({static_cast<std::uint32_t>(r), c,
                             p.values[r] * a.values()[k] * std::conj(p.values[c])});
        }
    }
    return SparseHermitian::from_triplets(a.dim(), a.basis_tag(), std::move(trips));
}

}  // namespace bhecho
