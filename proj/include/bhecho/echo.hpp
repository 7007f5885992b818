// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "bhecho/operators.hpp"
#include "bhecho/propagator.hpp"
#include "bhecho/state_vector.hpp"

namespace bhecho {

/// Named forward/backward generator pairs for the echo
///   f(t) = |<psi0| exp(-i H_b t) exp(-i H_f t) |psi0>|^2.
///
///   ideal             H_f = -J T + U D_int,            H_b = -H_f
///   delta_j_symmetric H_f = -(J - dJ/2) T + U D_int,   H_b = (J + dJ/2) T - U D_int
///   delta_j_oneleg    H_f = -J T + U D_int,            H_b = (J - dJ) T - U D_int
///   delta_u           H_f = -J T + U D_int,            H_b = J T + (-U + dU) D_int
///   gravity           H_f = -J T + U D_int + F D_tilt, H_b = J T - U D_int + F D_tilt
enum class ScenarioKind { ideal, delta_j_symmetric, delta_j_oneleg, delta_u, gravity };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

struct Scenario {
    ScenarioKind kind = ScenarioKind::ideal;
    BhmParams base;          // nominal J, U (F must be zero except via gravity magnitude)
    double magnitude = 0.0;  // dJ, dU, or F
    std::uint64_t basis_tag = 0;
    SparseHermitian forward;
    SparseHermitian backward;
    SparseHermitian perturbation;  // Delta = H_f + H_b, drives the short-time decay
};

Scenario make_scenario(const LatticeOperators& ops, ScenarioKind kind,
                       const BhmParams& base, double magnitude);

struct EchoCurve {
    std::vector<double> times;
    std::vector<double> fidelity;      // clamped into [0, 1]
    std::vector<double> fidelity_raw;  // as computed, kept for diagnostics
    std::string protocol;
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Samples f(t) on an ascending grid starting at 0, in a single pass by
/// co-propagating chi(t) = exp(-i H_f t) psi0 and phi(t) = exp(+i H_b t) psi0
/// and taking |<phi|chi>|^2.
EchoCurve echo_curve(const StateVector& psi0, const Scenario& scenario,
                     std::span<const double> t_grid, const PropagatorConfig& cfg = {});

/// Full pulsed experimental sequence: forward evolution, imprint (ideal
/// instantaneous pi phase or a pulsed tilt), backward evolution with the
/// interaction flipped to -U + delta_u.
struct SequenceSpec {
    double J = 1.0;
    double U = 1.0;
    double F_background = 0.0;  // unreversed tilt present in both legs

    enum class Imprint { ideal, pulsed };
    Imprint imprint = Imprint::ideal;
    double phase_error = 0.0;     // ideal mode: per-site phase is pi + phase_error
    double pulse_tilt = 0.0;      // pulsed mode: F_pulse
    double pulse_duration = 0.0;  // pulsed mode: tau (expect F_pulse * tau = pi)
    bool freeze_lattice_during_pulse = false;  // artificial J = U = 0 limit

    double delta_u = 0.0;  // backward interaction coefficient is -U + delta_u

    // Optional physical parameters (SI-like units) for the intra-well
    // pulse-duration bound tau < 2 m d^2 / pi^2; informational only.
    double boson_mass = 0.0;
    double site_spacing = 0.0;
};

struct SequenceResult {
    EchoCurve curve;
    std::vector<std::string> warnings;
};

SequenceResult sequence_echo(const FockBasis& basis, const LatticeOperators& ops,
                             const StateVector& psi0, const SequenceSpec& seq,
                             std::span<const double> t_grid,
                             const PropagatorConfig& cfg = {});

}  // namespace bhecho
