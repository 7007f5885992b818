// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bhecho/echo.hpp"
#include "bhecho/spectra.hpp"

namespace bhecho {

enum class DecayModel { gaussian, quartic };

struct FitOptions {
    enum class Window {
        shoulder,  ///< initial decay rate: early quadratic regime, f >= 0.8
        late       ///< crossover regime: affine fit of -ln f vs t^2 for t >= late_t_lo
    };
    Window window = Window::shoulder;
    double late_t_lo = 1.0;
    double noise_floor = 1e-7;  ///< smallest usable depth 1 - f
    double rho_band = 0.2;      ///< allowed drift of -ln f / t^2 inside the shoulder window
    std::size_t min_points = 8;
};

struct DecayFit {
    DecayModel model = DecayModel::gaussian;
    double parameter = 0.0;  // alpha (gaussian) or c (quartic)
    double t_lo = 0.0, t_hi = 0.0;
    double rms_residual = 0.0;
    std::size_t n_points = 0;
};

/// Fits f = exp(-alpha t^2) or f = 1 - c t^4 to an echo curve.
///
/// The gaussian shoulder window is self-detecting: it keeps the early
/// contiguous points where the local rate -ln f / t^2 stays within rho_band
/// of its t -> 0 value (and f >= 0.8), then fits -ln f = alpha t^2 + b t^4
/// and reports alpha. The quadratic-in-t^2 term absorbs the shoulder
/// curvature of saturating echoes so alpha reproduces the t -> 0 rate.
DecayFit fit_decay(const EchoCurve& curve, DecayModel model, const FitOptions& opt = {});

/// Second-order prediction for the initial gaussian rate:
/// alpha = <Delta^2> - <Delta>^2 with Delta = H_f + H_b.
double variance_oracle(const StateVector& psi0, const Scenario& scenario);

/// Least-squares slope of log(1 - f) vs log t over points with
/// 1 - f in [depth_lo, depth_hi]; exponent check for the short-time laws.
double loglog_slope(const EchoCurve& curve, double depth_lo, double depth_hi);

enum class PerturbationKind { delta_j, delta_u, gravity };

struct Prediction {
    double fidelity = 1.0;
    double validity_t_max = std::numeric_limits<double>::infinity();
    bool within_validity = true;
};

/// Closed-form short-time laws:
///   delta_j: f = 1 - dJ^2 t^2          (valid t << 1/dJ)
///   delta_u: f = 1 - J^2 dU^2 t^4      (valid t << 1/sqrt(J dU))
///   gravity: f = 1 - (2 F J)^2 t^4     (F = m g d)
Prediction perturbative_prediction(PerturbationKind kind, double J, double magnitude,
                                   double t);

struct FeshbachParams {
    double a_bg = 1.0;    // background scattering length
    double B0 = 0.0;      // resonance position
    double delta_B = 1.0; // resonance width (nonzero)
};

/// a_s(B) = a_bg (1 - delta_B / (B - B0)); pole-guarded near B0.
double scattering_length(const FeshbachParams& fp, double B,
                         double pole_guard_fraction = 1e-6);

/// {0} followed by a geometric ladder up to t_max; resolves every time
/// scale of a decay curve for rate fitting.
std::vector<double> fit_time_grid(double t_max, int points);

/// Echo curve on an auto-selected grid: t_max targets f ~ 0.1 from the
/// variance oracle, then extends by doubling or truncates at the first
/// revival so the initial decay is well resolved.
EchoCurve auto_echo_curve(const StateVector& psi0, const Scenario& scenario,
                          const PropagatorConfig& cfg = {}, int points = 200);

struct ScanOptions {
    double U = 1.0;
    double delta_j = 0.05;
    bool compute_gap = true;
    int threads = 0;  ///< 0 = hardware concurrency
    int curve_points = 200;
    PropagatorConfig propagation;
    EigOptions eigensolver;
    FitOptions fit;
    std::size_t state_cap = FockBasis::kDefaultStateCap;
};

struct ScanPoint {
    double J = 0.0;
    double alpha_raw = std::numeric_limits<double>::quiet_NaN();
    double alpha_norm = std::numeric_limits<double>::quiet_NaN();
    double dalpha_dJ = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    double fit_residual = std::numeric_limits<double>::quiet_NaN();
    double alpha_oracle = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";
};

/// Critical-point scan at unit filling (M = N): per grid point, ground state
/// of the nominal H(J, U), a J +/- dJ/2 symmetric echo, gaussian rate fit,
/// then normalization to the J = 0 value and a central-difference derivative
/// whose extremum sharpens at the transition.
struct CriticalScan {
    int n_sites = 0;
    int n_bosons = 0;
    double U = 1.0;
    double delta_j = 0.0;
    std::vector<ScanPoint> points;
    double peak_J = std::numeric_limits<double>::quiet_NaN();
    double peak_height = std::numeric_limits<double>::quiet_NaN();  // max |d alpha_norm / dJ|

    /// Thermodynamic-limit transition reference, emitted with every scan.
    static constexpr double kThermodynamicJc = 0.52;

    /// Raw second-order J = 0 rate at unit filling, 4 (N - 1) dJ^2, and the
    /// (N - 1) dJ^2 normalization convention also found in the literature.
    static double alpha0_oracle(int n_sites, double delta_j);
    static double alpha0_literature_convention(int n_sites, double delta_j);

    bool all_ok() const;
};

CriticalScan critical_scan(int n_sites, std::span<const double> j_grid,
                           const ScanOptions& opt = {});

}  // namespace bhecho
