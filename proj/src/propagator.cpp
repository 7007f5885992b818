// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bhecho {

namespace {

struct KrylovSubspace {
    Eigen::MatrixXcd v;          // n x m orthonormal
    Eigen::VectorXd eigenvalues; // of the m x m tridiagonal projection
    Eigen::MatrixXd eigenvectors;
    double beta_out = 0.0;       // residual coupling past the subspace
    bool invariant = false;      // happy breakdown: subspace is exact
    Eigen::Index m = 0;
};

KrylovSubspace build_subspace(const SparseHermitian& h, const Eigen::VectorXcd& v0, int m_req) {
    const Eigen::Index n = v0.size();
    const Eigen::Index m_max = std::min<Eigen::Index>(m_req, n);
    KrylovSubspace k;
    k.v.resize(n, m_max);
    k.v.col(0) = v0;

    Eigen::VectorXd alpha(m_max), beta(m_max);
    const double scale = std::max(1.0, h.one_norm());
    Eigen::VectorXcd w(n);
    Eigen::Index m = 0;
    for (Eigen::Index j = 0; j < m_max; ++j) {
        w = h.apply(k.v.col(j));
        if (j > 0) w -= beta[j - 1] * k.v.col(j - 1);
        const double a = k.v.col(j).dot(w).real();
        w -= a * k.v.col(j);
        const auto vj = k.v.leftCols(j + 1);
        w -= vj * (vj.adjoint() * w);
        w -= vj * (vj.adjoint() * w);
        alpha[j] = a;
        const double b = w.norm();
        m = j + 1;
        if (b <= 1e-13 * scale) {
            k.invariant = true;
            k.beta_out = 0.0;
            break;
        }
        k.beta_out = b;
        if (j + 1 < m_max) {
            beta[j] = b;
            k.v.col(j + 1) = w / b;
        }
    }
    k.m = m;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(alpha.head(m), beta.head(m - 1 >= 0 ? m - 1 : 0),
                              Eigen::ComputeEigenvectors);
    k.eigenvalues = es.eigenvalues();
    k.eigenvectors = es.eigenvectors();
    return k;
}

}  // namespace

void evolve_inplace(const SparseHermitian& h, StateVector& psi, double t,
                    const PropagatorConfig& cfg) {
    if (h.basis_tag() != psi.basis_tag) {
        throw CompositionError("evolve: operator and state on different bases");
    }
    if (!std::isfinite(t)) throw DomainError("evolve: time must be finite");
    if (cfg.krylov_dim < 2) throw ConfigError("evolve: krylov_dim must be >= 2");
    if (cfg.step_tolerance <= 0) throw ConfigError("evolve: step_tolerance must be positive");
    if (t == 0.0) return;  // bit-exact identity

    const Eigen::Index n = psi.amplitudes.size();
    if (n == 1) {
        psi.amplitudes[0] *= std::exp(Complex{0.0, -h.coeff(0, 0).real() * t});
        return;
    }

    double remaining = t;
    int substeps = 0;
    while (remaining != 0.0) {
        const double beta0 = psi.norm();
        if (beta0 == 0.0) return;

        const KrylovSubspace k = build_subspace(h, psi.amplitudes / beta0, cfg.krylov_dim);
        const Eigen::VectorXd q1 = k.eigenvectors.row(0);

        double dt = remaining;
        Eigen::VectorXcd u;
        for (int halvings = 0;; ++halvings) {
            Eigen::VectorXcd phase(k.m);
            for (Eigen::Index i = 0; i < k.m; ++i) {
                phase[i] = std::exp(Complex{0.0, -k.eigenvalues[i] * dt}) * q1[i];
            }
            u = beta0 * (k.eigenvectors.cast<Complex>() * phase);
            const double err = k.invariant ? 0.0 : std::abs(k.beta_out * u[k.m - 1]);
            if (err <= cfg.step_tolerance * beta0) break;
            if (halvings >= 60) {
                throw ConvergenceError("evolve: Krylov step failed to reach tolerance");
            }
            dt *= 0.5;
        }

        psi.amplitudes = k.v.leftCols(k.m) * u;
        remaining = (dt == remaining) ? 0.0 : remaining - dt;
        if (++substeps > cfg.max_substeps) {
            throw ConvergenceError("evolve: substep budget exhausted (" +
                                   std::to_string(cfg.max_substeps) + ")");
        }
    }
}

StateVector evolved(const SparseHermitian& h, const StateVector& psi, double t,
                    const PropagatorConfig& cfg) {
    StateVector out = psi;
    evolve_inplace(h, out, t, cfg);
    return out;
}

}  // namespace bhecho
