// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/echo.hpp"

#include "bhecho/csv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bhecho {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::ideal: return "ideal";
        case ScenarioKind::delta_j_symmetric: return "delta_j_symmetric";
        case ScenarioKind::delta_j_oneleg: return "delta_j_oneleg";
        case ScenarioKind::delta_u: return "delta_u";
        case ScenarioKind::gravity: return "gravity";
    }
    throw DomainError("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
    if (name == "ideal") return ScenarioKind::ideal;
    if (name == "delta_j_symmetric") return ScenarioKind::delta_j_symmetric;
    if (name == "delta_j_oneleg") return ScenarioKind::delta_j_oneleg;
    if (name == "delta_u") return ScenarioKind::delta_u;
    if (name == "gravity") return ScenarioKind::gravity;
    throw ConfigError("unknown scenario kind: " + name);
}

Scenario make_scenario(const LatticeOperators& ops, ScenarioKind kind,
                       const BhmParams& base, double magnitude) {
    if (!std::isfinite(base.J) || !std::isfinite(base.U) || !std::isfinite(magnitude)) {
        throw DomainError("make_scenario: parameters must be finite");
    }
    if (base.F != 0.0) {
        throw ConfigError(
            "make_scenario: background tilt is modeled by the gravity kind; base F must be 0");
    }
    Scenario s;
    s.kind = kind;
    s.base = base;
    s.magnitude = magnitude;
    s.basis_tag = ops.basis_tag;
    const double J = base.J, U = base.U, d = magnitude;
    switch (kind) {
        case ScenarioKind::ideal:
            s.forward = ops.assemble({J, U, 0.0});
            s.backward = s.forward.scaled(-1.0);
            break;
        case ScenarioKind::delta_j_symmetric:
            s.forward = ops.assemble({J - d / 2.0, U, 0.0});
            s.backward = ops.assemble({J + d / 2.0, U, 0.0}).scaled(-1.0);
            break;
        case ScenarioKind::delta_j_oneleg:
            s.forward = ops.assemble({J, U, 0.0});
            s.backward = ops.assemble({-J + d, -U, 0.0});
            break;
        case ScenarioKind::delta_u:
            s.forward = ops.assemble({J, U, 0.0});
            s.backward = ops.assemble({-J, -U + d, 0.0});
            break;
        case ScenarioKind::gravity:
            s.forward = ops.assemble({J, U, d});
            s.backward = ops.assemble({-J, -U, d});
            break;
    }
    s.perturbation = add(s.forward, s.backward);
    return s;
}

namespace {

void check_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw DomainError("echo: empty time grid");
    if (t_grid.front() < 0.0) throw DomainError("echo: grid must start at t >= 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        if (!(t_grid[i + 1] > t_grid[i])) {
            throw DomainError("echo: time grid must be strictly ascending");
        }
    }
}

void record(EchoCurve& curve, double t, double f_raw) {
    curve.times.push_back(t);
    curve.fidelity_raw.push_back(f_raw);
    curve.fidelity.push_back(std::clamp(f_raw, 0.0, 1.0));
}

}  // namespace

EchoCurve echo_curve(const StateVector& psi0, const Scenario& scenario,
                     std::span<const double> t_grid, const PropagatorConfig& cfg) {
    if (psi0.basis_tag != scenario.basis_tag) {
        throw CompositionError("echo_curve: state and scenario on different bases");
    }
    check_grid(t_grid);

    EchoCurve curve;
    curve.protocol = to_string(scenario.kind);
    curve.metadata = {{"protocol", curve.protocol},
                      {"J", format_double(scenario.base.J)},
                      {"U", format_double(scenario.base.U)},
                      {"magnitude", format_double(scenario.magnitude)}};

    const SparseHermitian backward_neg = scenario.backward.scaled(-1.0);
    StateVector chi = psi0;  // exp(-i H_f t) psi0
    StateVector phi = psi0;  // exp(+i H_b t) psi0
    double prev = 0.0;
    for (double t : t_grid) {
        const double dt = t - prev;
        try {
            evolve_inplace(scenario.forward, chi, dt, cfg);
            evolve_inplace(backward_neg, phi, dt, cfg);
        } catch (const ConvergenceError& e) {
            std::ostringstream msg;
            msg << e.what() << " (at t = " << t << ")";
            throw ConvergenceError(msg.str());
        }
        record(curve, t, std::norm(overlap(phi, chi)));
        prev = t;
    }
    return curve;
}

SequenceResult sequence_echo(const FockBasis& basis, const LatticeOperators& ops,
                             const StateVector& psi0, const SequenceSpec& seq,
                             std::span<const double> t_grid, const PropagatorConfig& cfg) {
    if (psi0.basis_tag != ops.basis_tag || basis.tag() != ops.basis_tag) {
        throw CompositionError("sequence_echo: mismatched basis tags");
    }
    check_grid(t_grid);
    const bool pulsed = seq.imprint == SequenceSpec::Imprint::pulsed;
    if (pulsed && !(seq.pulse_duration > 0.0)) {
        throw ConfigError("sequence_echo: pulsed imprint requires tau > 0");
    }

    SequenceResult result;
    if (pulsed && seq.boson_mass > 0.0 && seq.site_spacing > 0.0) {
        const double bound =
            2.0 * seq.boson_mass * seq.site_spacing * seq.site_spacing /
            (std::numbers::pi * std::numbers::pi);
        if (seq.pulse_duration >= bound) {
            std::ostringstream w;
            w << "pulse duration " << seq.pulse_duration
              << " exceeds the intra-well bound 2 m d^2 / pi^2 = " << bound
              << "; intra-well dynamics is not modeled";
            result.warnings.push_back(w.str());
        }
    }

    const SparseHermitian h_fwd = ops.assemble({seq.J, seq.U, seq.F_background});
    const SparseHermitian h_bwd = ops.assemble({seq.J, -seq.U + seq.delta_u, seq.F_background});
    const SparseHermitian h_bwd_neg = h_bwd.scaled(-1.0);

    DiagonalUnitary imprint;
    SparseHermitian h_pulse;
    if (pulsed) {
        const double jp = seq.freeze_lattice_during_pulse ? 0.0 : seq.J;
        const double up = seq.freeze_lattice_during_pulse ? 0.0 : seq.U;
        h_pulse = ops.assemble({jp, up, seq.F_background + seq.pulse_tilt});
    } else {
        imprint = phase_imprint(basis, std::numbers::pi + seq.phase_error);
    }

    EchoCurve& curve = result.curve;
    curve.protocol = "sequence";
    curve.metadata = {{"protocol", "sequence"},
                      {"J", format_double(seq.J)},
                      {"U", format_double(seq.U)},
                      {"F_background", format_double(seq.F_background)},
                      {"imprint", pulsed ? "pulsed" : "ideal"},
                      {"delta_u", format_double(seq.delta_u)}};
    if (pulsed) {
        curve.metadata.emplace_back("pulse_tilt", format_double(seq.pulse_tilt));
        curve.metadata.emplace_back("pulse_duration", format_double(seq.pulse_duration));
    } else {
        curve.metadata.emplace_back("phase_error", format_double(seq.phase_error));
    }

    StateVector chi = psi0;  // exp(-i H_fwd t) psi0
    StateVector phi = psi0;  // exp(+i H_bwd t) psi0
    double prev = 0.0;
    for (double t : t_grid) {
        const double dt = t - prev;
        evolve_inplace(h_fwd, chi, dt, cfg);
        evolve_inplace(h_bwd_neg, phi, dt, cfg);
        StateVector mid = chi;
        if (pulsed) {
            evolve_inplace(h_pulse, mid, seq.pulse_duration, cfg);
        } else {
            apply_diagonal(imprint, mid);
        }
        record(curve, t, std::norm(overlap(phi, mid)));
        prev = t;
    }
    return result;
}

}  // namespace bhecho
