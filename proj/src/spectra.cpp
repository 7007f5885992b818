// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bhecho {

double SpectrumSlice::gap() const {
    if (eigenvalues.size() < 2) {
        throw DomainError("SpectrumSlice::gap: need at least two eigenvalues");
    }
    return eigenvalues[1] - eigenvalues[0];
}

bool SpectrumSlice::degenerate_ground(double tol) const {
    return eigenvalues.size() >= 2 && (eigenvalues[1] - eigenvalues[0]) < tol;
}

namespace {

void check_k(const SparseHermitian& h, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > h.dim()) {
        throw DomainError("low_spectrum: k must be in [1, dim]");
    }
}

std::vector<double> true_residuals(const SparseHermitian& h,
                                   const std::vector<double>& evals,
                                   const std::vector<Eigen::VectorXcd>& evecs) {
    std::vector<double> res(evals.size());
    for (std::size_t i = 0; i < evals.size(); ++i) {
        res[i] = (h.apply(evecs[i]) - evals[i] * evecs[i]).norm();
    }
    return res;
}

}  // namespace

SpectrumSlice low_spectrum_dense(const SparseHermitian& h, int k) {
    check_k(h, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("dense eigendecomposition failed");
    }
    SpectrumSlice s;
    for (int i = 0; i < k; ++i) {
        s.eigenvalues.push_back(es.eigenvalues()[i]);
        s.eigenvectors.push_back(es.eigenvectors().col(i));
    }
    s.residuals = true_residuals(h, s.eigenvalues, s.eigenvectors);
    return s;
}

SpectrumSlice low_spectrum_lanczos(const SparseHermitian& h, int k, const EigOptions& opt) {
    check_k(h, k);
    const std::size_t n = h.dim();

    if (n == 1) {
        SpectrumSlice s;
        s.eigenvalues.push_back(h.coeff(0, 0).real());
        s.eigenvectors.push_back(Eigen::VectorXcd::Ones(1));
        s.residuals.push_back(0.0);
        return s;
    }

    const std::size_t m_max =
        std::min(n, static_cast<std::size_t>(std::max(opt.max_subspace, 2 * k + 10)));

    Eigen::MatrixXcd V(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m_max));
    std::vector<double> alpha, beta;  // beta[j] couples vectors j and j+1
    alpha.reserve(m_max);
    beta.reserve(m_max);

    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * n));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex{gauss(rng), gauss(rng)};
    v /= v.norm();
    V.col(0) = v;

    const double scale = std::max(1.0, h.one_norm());
    double last_beta = 0.0;
    Eigen::VectorXcd w(static_cast<Eigen::Index>(n));

    auto ritz = [&](std::size_t m, bool vectors) {
        Eigen::Map<const Eigen::VectorXd> d(alpha.data(), static_cast<Eigen::Index>(m));
        Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
        for (std::size_t i = 0; i + 1 < m; ++i) sub[static_cast<Eigen::Index>(i)] = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, sub,
                                  vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        return es;
    };

    for (std::size_t j = 0; j < m_max; ++j) {
        w = h.apply(V.col(static_cast<Eigen::Index>(j)));
        if (j > 0) w -= beta[j - 1] * V.col(static_cast<Eigen::Index>(j - 1));
        const double a = V.col(static_cast<Eigen::Index>(j)).dot(w).real();
        w -= a * V.col(static_cast<Eigen::Index>(j));
        alpha.push_back(a);

        // full reorthogonalization, two passes
        const auto Vj = V.leftCols(static_cast<Eigen::Index>(j + 1));
        w -= Vj * (Vj.adjoint() * w);
        w -= Vj * (Vj.adjoint() * w);

        last_beta = w.norm();
        const std::size_t m = j + 1;
        const bool breakdown = last_beta <= 1e-13 * scale;
        const bool full = m == m_max;
        const bool do_check = m >= static_cast<std::size_t>(k) &&
                              (breakdown || full || m % 5 == 0 || m < 40);
        if (do_check) {
            auto es = ritz(m, true);
            bool converged = true;
            for (int i = 0; i < k; ++i) {
                const double r = last_beta * std::abs(es.eigenvectors()(
                                                  static_cast<Eigen::Index>(m - 1), i));
                if (r > 0.5 * opt.tol) {
                    converged = false;
                    break;
                }
            }
            if (converged || breakdown) {
                if (breakdown && m < static_cast<std::size_t>(k)) break;
                SpectrumSlice s;
                const auto Vm = V.leftCols(static_cast<Eigen::Index>(m));
                for (int i = 0; i < k; ++i) {
                    s.eigenvalues.push_back(es.eigenvalues()[i]);
                    Eigen::VectorXcd y = Vm * es.eigenvectors().col(i).cast<Complex>();
                    y /= y.norm();
                    s.eigenvectors.push_back(std::move(y));
                }
                s.residuals = true_residuals(h, s.eigenvalues, s.eigenvectors);
                const double worst = *std::max_element(s.residuals.begin(), s.residuals.end());
                if (worst > std::max(10.0 * opt.tol, 1e-9 * scale)) {
                    std::ostringstream msg;
                    msg << "Lanczos: Ritz residual " << worst << " exceeds tolerance "
                        << opt.tol << " after " << m << " iterations";
                    throw ConvergenceError(msg.str());
                }
                return s;
            }
        }
        if (breakdown) {
            throw ConvergenceError("Lanczos: Krylov space exhausted before finding " +
                                   std::to_string(k) + " eigenpairs");
        }
        if (j + 1 < m_max) {
            V.col(static_cast<Eigen::Index>(j + 1)) = w / last_beta;
            beta.push_back(last_beta);
        }
    }
    std::ostringstream msg;
    msg << "Lanczos: no convergence within " << m_max
        << " iterations (last residual estimate " << last_beta << ")";
    throw ConvergenceError(msg.str());
}

SpectrumSlice low_spectrum(const SparseHermitian& h, int k, const EigOptions& opt) {
    check_k(h, k);
    if (h.dim() <= opt.max_dense_dim) return low_spectrum_dense(h, k);
    return low_spectrum_lanczos(h, k, opt);
}

std::pair<double, StateVector> ground_state(const SparseHermitian& h, const EigOptions& opt) {
    const int k = h.dim() >= 2 ? 2 : 1;
    SpectrumSlice s = low_spectrum(h, k, opt);
    StateVector psi;
    psi.basis_tag = h.basis_tag();
    psi.amplitudes = s.eigenvectors[0];
    // gauge: largest amplitude real positive
    Eigen::Index imax = 0;
    psi.amplitudes.cwiseAbs().maxCoeff(&imax);
    const Complex z = psi.amplitudes[imax];
    if (std::abs(z) > 0) psi.amplitudes *= std::conj(z) / std::abs(z);
    psi.normalize();
    return {s.eigenvalues[0], std::move(psi)};
}

std::vector<double> full_spectrum(const SparseHermitian& h, std::size_t max_dense_dim) {
    if (h.dim() > max_dense_dim) {
        throw DimensionError("full_spectrum: dimension " + std::to_string(h.dim()) +
                             " exceeds dense limit " + std::to_string(max_dense_dim));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

SpacingRatio spacing_ratio(std::span<const double> levels, double degeneracy_tol) {
    if (levels.size() < 4) {
        throw DomainError("spacing_ratio: need at least 4 levels");
    }
    SpacingRatio out;
    std::vector<double> spacings;
    spacings.reserve(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const double s = levels[i + 1] - levels[i];
        if (s < -degeneracy_tol) throw DomainError("spacing_ratio: levels not sorted");
        if (s <= degeneracy_tol) {
            ++out.n_degenerate;
        } else {
            spacings.push_back(s);
        }
    }
    if (spacings.size() < 3) {
        throw DomainError("spacing_ratio: fewer than 4 distinct levels");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < spacings.size(); ++i) {
        sum += std::min(spacings[i], spacings[i + 1]) /
               std::max(spacings[i], spacings[i + 1]);
        ++out.n_ratios;
    }
    out.mean_r = sum / static_cast<double>(out.n_ratios);
    return out;
}

}  // namespace bhecho
