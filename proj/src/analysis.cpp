// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace bhecho {

namespace {

// First index whose fidelity rises measurably above the running decay,
// i.e. the onset of a revival; returns size() when the curve is monotone.
std::size_t first_revival(const std::vector<double>& f) {
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f[i + 1] > f[i] + std::max(1e-9, 0.02 * (1.0 - f[i]))) return i + 1;
    }
    return f.size();
}

struct FitData {
    std::vector<double> x, y;
    double t_lo = 0.0, t_hi = 0.0;
};

DecayFit finish_linear_fit(DecayModel model, const FitData& d, bool with_quadratic,
                           bool with_intercept) {
    const std::size_t n = d.x.size();
    double alpha = 0.0, b = 0.0, c0 = 0.0;
    if (with_quadratic) {
        // y = alpha x + b x^2
        double sxx = 0, sxq = 0, sqq = 0, sxy = 0, sqy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = d.x[i], q = x * x;
            sxx += x * x;
            sxq += x * q;
            sqq += q * q;
            sxy += x * d.y[i];
            sqy += q * d.y[i];
        }
        const double det = sxx * sqq - sxq * sxq;
        if (det <= 0.0) throw FitError("fit_decay: singular normal equations");
        alpha = (sqq * sxy - sxq * sqy) / det;
        b = (sxx * sqy - sxq * sxy) / det;
    } else if (with_intercept) {
        // y = c0 + alpha x
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += d.x[i];
            sy += d.y[i];
            sxx += d.x[i] * d.x[i];
            sxy += d.x[i] * d.y[i];
        }
        const double det = n * sxx - sx * sx;
        if (det <= 0.0) throw FitError("fit_decay: singular normal equations");
        alpha = (n * sxy - sx * sy) / det;
        c0 = (sy - alpha * sx) / n;
    } else {
        // y = alpha x through the origin
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += d.x[i] * d.x[i];
            sxy += d.x[i] * d.y[i];
        }
        if (sxx <= 0.0) throw FitError("fit_decay: degenerate abscissa");
        alpha = sxy / sxx;
    }

    double ss = 0.0, yscale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = c0 + alpha * d.x[i] + b * d.x[i] * d.x[i];
        ss += (d.y[i] - pred) * (d.y[i] - pred);
        yscale = std::max(yscale, std::abs(d.y[i]));
    }

    if (alpha < -1e-9 * std::max(1.0, yscale)) {
        throw FitError("fit_decay: fitted parameter is negative (" +
                       std::to_string(alpha) + ")");
    }
    DecayFit fit;
    fit.model = model;
    fit.parameter = std::max(alpha, 0.0);
    fit.t_lo = d.t_lo;
    fit.t_hi = d.t_hi;
    fit.rms_residual = std::sqrt(ss / n);
    fit.n_points = n;
    return fit;
}

}  // namespace

DecayFit fit_decay(const EchoCurve& curve, DecayModel model, const FitOptions& opt) {
    const auto& t = curve.times;
    const auto& f = curve.fidelity_raw;
    if (t.size() != f.size() || t.empty()) throw FitError("fit_decay: malformed curve");

    FitData d;
    if (model == DecayModel::gaussian && opt.window == FitOptions::Window::late) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < opt.late_t_lo || f[i] < 1e-8) continue;
            d.x.push_back(t[i] * t[i]);
            d.y.push_back(-std::log(f[i]));
            if (d.x.size() == 1) d.t_lo = t[i];
            d.t_hi = t[i];
        }
        if (d.x.size() < opt.min_points) {
            throw FitError("fit_decay: only " + std::to_string(d.x.size()) +
                           " usable points in the late window");
        }
        return finish_linear_fit(model, d, false, true);
    }

    // shoulder windows start at the first point measurably below 1
    const std::size_t seg_end = first_revival(f);
    std::size_t i0 = seg_end;
    for (std::size_t i = 0; i < seg_end; ++i) {
        if (t[i] > 0.0 && (1.0 - f[i]) >= opt.noise_floor) {
            i0 = i;
            break;
        }
    }
    if (i0 == seg_end) {
        throw FitError("fit_decay: curve shows no decay above the noise floor");
    }

    if (model == DecayModel::quartic) {
        for (std::size_t i = i0; i < seg_end; ++i) {
            if (f[i] < 0.95) break;
            const double x = t[i] * t[i];
            d.x.push_back(x * x);
            d.y.push_back(1.0 - f[i]);
            if (d.x.size() == 1) d.t_lo = t[i];
            d.t_hi = t[i];
        }
        if (d.x.size() < opt.min_points) {
            throw FitError("fit_decay: only " + std::to_string(d.x.size()) +
                           " usable points in the quartic window");
        }
        return finish_linear_fit(model, d, false, false);
    }

    // local rate at the earliest usable scale
    std::vector<double> rho0;
    for (std::size_t i = i0; i < std::min(i0 + 5, seg_end); ++i) {
        rho0.push_back(-std::log(f[i]) / (t[i] * t[i]));
    }
    std::nth_element(rho0.begin(), rho0.begin() + static_cast<std::ptrdiff_t>(rho0.size() / 2),
                     rho0.end());
    const double r0 = rho0[rho0.size() / 2];
    if (!(r0 > 0.0)) throw FitError("fit_decay: non-decaying initial rate");

    for (std::size_t i = i0; i < seg_end; ++i) {
        if (f[i] < 0.8) break;
        const double rho = -std::log(f[i]) / (t[i] * t[i]);
        if (std::abs(rho - r0) > opt.rho_band * r0) break;
        d.x.push_back(t[i] * t[i]);
        d.y.push_back(-std::log(f[i]));
        if (d.x.size() == 1) d.t_lo = t[i];
        d.t_hi = t[i];
    }
    if (d.x.size() < opt.min_points) {
        throw FitError("fit_decay: only " + std::to_string(d.x.size()) +
                       " usable points in the shoulder window");
    }
    return finish_linear_fit(model, d, true, false);
}

double variance_oracle(const StateVector& psi0, const Scenario& scenario) {
    if (psi0.basis_tag != scenario.basis_tag) {
        throw CompositionError("variance_oracle: state and scenario on different bases");
    }
    const Eigen::VectorXcd v = scenario.perturbation.apply(psi0.amplitudes);
    const double mean = psi0.amplitudes.dot(v).real();
    const double second = v.squaredNorm();
    return second - mean * mean;
}

double loglog_slope(const EchoCurve& curve, double depth_lo, double depth_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        const double t = curve.times[i];
        const double depth = 1.0 - curve.fidelity_raw[i];
        if (t <= 0.0 || depth < depth_lo || depth > depth_hi) continue;
        const double x = std::log(t), y = std::log(depth);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 5) throw FitError("loglog_slope: fewer than 5 points in the depth band");
    const double det = static_cast<double>(n) * sxx - sx * sx;
    if (det <= 0.0) throw FitError("loglog_slope: degenerate abscissa");
    return (static_cast<double>(n) * sxy - sx * sy) / det;
}

Prediction perturbative_prediction(PerturbationKind kind, double J, double magnitude,
                                   double t) {
    Prediction p;
    const double m = magnitude;
    switch (kind) {
        case PerturbationKind::delta_j:
            p.fidelity = 1.0 - m * m * t * t;
            p.validity_t_max = m != 0.0 ? 1.0 / std::abs(m) : p.validity_t_max;
            break;
        case PerturbationKind::delta_u:
            p.fidelity = 1.0 - J * J * m * m * t * t * t * t;
            if (J * m != 0.0) p.validity_t_max = 1.0 / std::sqrt(std::abs(J * m));
            break;
        case PerturbationKind::gravity: {
            const double c = 2.0 * m * J;
            p.fidelity = 1.0 - c * c * t * t * t * t;
            if (c != 0.0) p.validity_t_max = 1.0 / std::sqrt(std::abs(c));
            break;
        }
    }
    p.within_validity = std::abs(t) < p.validity_t_max;
    return p;
}

double scattering_length(const FeshbachParams& fp, double B, double pole_guard_fraction) {
    if (fp.delta_B == 0.0) throw DomainError("scattering_length: resonance width is zero");
    const double det = B - fp.B0;
    if (std::abs(det) < pole_guard_fraction * std::abs(fp.delta_B)) {
        throw DomainError("scattering_length: field within the pole guard of B0");
    }
    return fp.a_bg * (1.0 - fp.delta_B / det);
}

std::vector<double> fit_time_grid(double t_max, int points) {
    if (!(t_max > 0.0) || points < 8) throw DomainError("fit_time_grid: bad arguments");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    grid.push_back(0.0);
    const double t_min = t_max * 1e-4;
    const int m = points - 1;
    for (int i = 0; i < m; ++i) {
        grid.push_back(t_min * std::pow(t_max / t_min,
                                        static_cast<double>(i) / (m - 1)));
    }
    return grid;
}

EchoCurve auto_echo_curve(const StateVector& psi0, const Scenario& scenario,
                          const PropagatorConfig& cfg, int points) {
    const double alpha_est = std::max(variance_oracle(psi0, scenario), 1e-12);
    double t_max = std::sqrt(std::log(10.0) / alpha_est);

    EchoCurve curve;
    int doublings = 0;
    for (int round = 0; round < 8; ++round) {
        curve = echo_curve(psi0, scenario, fit_time_grid(t_max, points), cfg);
        const auto& f = curve.fidelity_raw;
        const std::size_t revival = first_revival(f);
        std::size_t cross = f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] <= 0.1) {
                cross = i;
                break;
            }
        }
        if (revival < f.size() && revival <= cross) {
            // saturating echo: zoom onto the initial decay and stop
            const double t_new = 1.5 * curve.times[revival];
            if (t_new < t_max) {
                curve = echo_curve(psi0, scenario, fit_time_grid(t_new, points), cfg);
            }
            break;
        }
        if (cross < f.size() && cross < f.size() / 3) {
            t_max = 1.25 * curve.times[cross];
            continue;
        }
        if (f.back() > 0.3 && doublings < 4) {
            t_max *= 2.0;
            ++doublings;
            continue;
        }
        break;
    }
    return curve;
}

double CriticalScan::alpha0_oracle(int n_sites, double delta_j) {
    return 4.0 * (n_sites - 1) * delta_j * delta_j;
}

double CriticalScan::alpha0_literature_convention(int n_sites, double delta_j) {
    return (n_sites - 1) * delta_j * delta_j;
}

bool CriticalScan::all_ok() const {
    return std::all_of(points.begin(), points.end(),
                       [](const ScanPoint& p) { return p.status == "ok"; });
}

CriticalScan critical_scan(int n_sites, std::span<const double> j_grid,
                           const ScanOptions& opt) {
    if (j_grid.size() < 4) throw DomainError("critical_scan: need at least 4 grid points");

    const FockBasis basis =
        FockBasis::enumerate({n_sites, n_sites}, opt.state_cap);  // unit filling
    const LatticeOperators ops = LatticeOperators::build(basis);

    CriticalScan scan;
    scan.n_sites = n_sites;
    scan.n_bosons = n_sites;
    scan.U = opt.U;
    scan.delta_j = opt.delta_j;
    scan.points.resize(j_grid.size());

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_workers = std::min<std::size_t>(
        j_grid.size(), opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                       : std::max(1u, hw));

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= j_grid.size()) return;
            ScanPoint& p = scan.points[i];
            p.J = j_grid[i];
            try {
                const SparseHermitian h_nom = ops.assemble({p.J, opt.U, 0.0});
                auto [energy, psi] = ground_state(h_nom, opt.eigensolver);
                (void)energy;
                const Scenario sc = make_scenario(ops, ScenarioKind::delta_j_symmetric,
                                                  {p.J, opt.U, 0.0}, opt.delta_j);
                p.alpha_oracle = variance_oracle(psi, sc);
                const EchoCurve curve =
                    auto_echo_curve(psi, sc, opt.propagation, opt.curve_points);
                const DecayFit fit = fit_decay(curve, DecayModel::gaussian, opt.fit);
                p.alpha_raw = fit.parameter;
                p.fit_residual = fit.rms_residual;
                if (opt.compute_gap) {
                    p.gap = low_spectrum(h_nom, 2, opt.eigensolver).gap();
                }
            } catch (const Error& e) {
                p.status = e.what();
            }
        }
    };
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // normalization and central-difference derivative
    const ScanPoint& origin = scan.points.front();
    if (origin.status == "ok" && origin.alpha_raw > 0.0) {
        for (auto& p : scan.points) {
            if (p.status == "ok") p.alpha_norm = p.alpha_raw / origin.alpha_raw;
        }
    }
    for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
        const auto& lo = scan.points[i - 1];
        const auto& hi = scan.points[i + 1];
        if (std::isnan(lo.alpha_norm) || std::isnan(hi.alpha_norm)) continue;
        scan.points[i].dalpha_dJ = (hi.alpha_norm - lo.alpha_norm) / (hi.J - lo.J);
    }

    // extremum of |d alpha_norm / dJ|, refined by a local parabola
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
        const double mag = std::abs(scan.points[i].dalpha_dJ);
        if (!std::isnan(scan.points[i].dalpha_dJ) && mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag >= 0.0) {
        scan.peak_J = scan.points[best].J;
        scan.peak_height = best_mag;
        if (best >= 2 && best + 2 < scan.points.size() &&
            !std::isnan(scan.points[best - 1].dalpha_dJ) &&
            !std::isnan(scan.points[best + 1].dalpha_dJ)) {
            const double ym = std::abs(scan.points[best - 1].dalpha_dJ);
            const double y0 = best_mag;
            const double yp = std::abs(scan.points[best + 1].dalpha_dJ);
            const double denom = ym - 2.0 * y0 + yp;
            if (denom < 0.0) {
                const double h = scan.points[best + 1].J - scan.points[best].J;
                const double shift = 0.5 * (ym - yp) / denom;
                scan.peak_J += shift * h;
                scan.peak_height = y0 - 0.25 * (ym - yp) * shift;
            }
        }
    }
    return scan;
}

}  // namespace bhecho
