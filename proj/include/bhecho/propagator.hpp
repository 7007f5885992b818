// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "bhecho/sparse.hpp"
#include "bhecho/state_vector.hpp"

namespace bhecho {

struct PropagatorConfig {
    int krylov_dim = 30;           ///< Lanczos subspace size per step
    double step_tolerance = 1e-10; ///< local error bound per substep
    int max_substeps = 100000;
};

/// psi <- exp(-i H t) psi, Krylov approximation with adaptive substepping.
/// Either sign of t. Norm is preserved to roundoff (no renormalization), so
/// the map is exactly linear in the input amplitudes.
void evolve_inplace(const SparseHermitian& h, StateVector& psi, double t,
                    const PropagatorConfig& cfg = {});

StateVector evolved(const SparseHermitian& h, const StateVector& psi, double t,
                    const PropagatorConfig& cfg = {});

}  // namespace bhecho
