// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "bhecho/errors.hpp"
#include "bhecho/operators.hpp"
#include "bhecho/spectra.hpp"
#include "bhecho/state_vector.hpp"

namespace bhecho::runner {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------- parsing

json load_config(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file: " + path.string());
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) { known = true; break; }
        }
        if (!known) throw ConfigError(ctx + ": unknown key '" + item.key() + "'");
    }
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(ctx + ": missing required key '" + key + "'");
    return *it;
}

double num(const json& v, const std::string& ctx) {
    if (!v.is_number()) throw ConfigError(ctx + ": expected a number");
    return v.get<double>();
}

double req_num(const json& obj, const std::string& ctx, const char* key) {
    return num(require(obj, ctx, key), ctx + "." + key);
}

double opt_num(const json& obj, const std::string& ctx, const char* key, double fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : num(*it, ctx + "." + key);
}

int req_int(const json& obj, const std::string& ctx, const char* key) {
    const json& v = require(obj, ctx, key);
    if (!v.is_number_integer()) throw ConfigError(ctx + "." + key + ": expected an integer");
    return v.get<int>();
}

int opt_int(const json& obj, const std::string& ctx, const char* key, int fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer()) throw ConfigError(ctx + "." + key + ": expected an integer");
    return it->get<int>();
}

bool opt_bool(const json& obj, const std::string& ctx, const char* key, bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) throw ConfigError(ctx + "." + key + ": expected a boolean");
    return it->get<bool>();
}

std::string req_str(const json& obj, const std::string& ctx, const char* key) {
    const json& v = require(obj, ctx, key);
    if (!v.is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::string opt_str(const json& obj, const std::string& ctx, const char* key,
                    const std::string& fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
    return it->get<std::string>();
}

LatticeSpec parse_lattice(const json& cfg) {
    const json& lat = require(cfg, "config", "lattice");
    check_keys(lat, "lattice", {"n_sites", "n_bosons"});
    LatticeSpec spec;
    spec.n_sites = req_int(lat, "lattice", "n_sites");
    spec.n_bosons = req_int(lat, "lattice", "n_bosons");
    if (spec.n_sites < 1) throw ConfigError("lattice.n_sites must be >= 1");
    if (spec.n_bosons < 0) throw ConfigError("lattice.n_bosons must be >= 0");
    return spec;
}

PropagatorConfig parse_propagation(const json& cfg) {
    PropagatorConfig pc;
    auto it = cfg.find("propagation");
    if (it == cfg.end()) return pc;
    check_keys(*it, "propagation", {"krylov_dim", "step_tolerance", "max_substeps"});
    pc.krylov_dim = opt_int(*it, "propagation", "krylov_dim", pc.krylov_dim);
    pc.step_tolerance = opt_num(*it, "propagation", "step_tolerance", pc.step_tolerance);
    pc.max_substeps = opt_int(*it, "propagation", "max_substeps", pc.max_substeps);
    if (pc.krylov_dim < 2) throw ConfigError("propagation.krylov_dim must be >= 2");
    if (pc.step_tolerance <= 0) throw ConfigError("propagation.step_tolerance must be > 0");
    return pc;
}

struct TimeGridSpec {
    enum class Type { linear, log, automatic } type = Type::linear;
    double t_min = 0.0;
    double t_max = 1.0;
    int points = 200;
};

TimeGridSpec parse_time_grid(const json& cfg, bool allow_auto) {
    const json& tg = require(cfg, "config", "time_grid");
    check_keys(tg, "time_grid", {"type", "t_min", "t_max", "points"});
    TimeGridSpec spec;
    const std::string type = opt_str(tg, "time_grid", "type", "linear");
    if (type == "linear") {
        spec.type = TimeGridSpec::Type::linear;
    } else if (type == "log") {
        spec.type = TimeGridSpec::Type::log;
    } else if (type == "auto") {
        spec.type = TimeGridSpec::Type::automatic;
        if (!allow_auto) throw ConfigError("time_grid.type 'auto' is not valid for this job");
    } else {
        throw ConfigError("time_grid.type must be one of linear, log, auto");
    }
    spec.points = opt_int(tg, "time_grid", "points", 200);
    if (spec.points < 2) throw ConfigError("time_grid.points must be >= 2");
    if (spec.type != TimeGridSpec::Type::automatic) {
        spec.t_max = req_num(tg, "time_grid", "t_max");
        if (spec.t_max <= 0) throw ConfigError("time_grid.t_max must be > 0");
    }
    if (spec.type == TimeGridSpec::Type::log) {
        spec.t_min = opt_num(tg, "time_grid", "t_min", spec.t_max * 1e-4);
        if (spec.t_min <= 0 || spec.t_min >= spec.t_max) {
            throw ConfigError("time_grid.t_min must satisfy 0 < t_min < t_max");
        }
    }
    return spec;
}

std::vector<double> make_time_grid(const TimeGridSpec& spec) {
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(spec.points) + 1);
    if (spec.type == TimeGridSpec::Type::linear) {
        for (int i = 0; i < spec.points; ++i) {
            t.push_back(spec.t_max * static_cast<double>(i) / (spec.points - 1));
        }
    } else {
        t.push_back(0.0);
        const double ratio = std::log(spec.t_max / spec.t_min);
        for (int i = 0; i < spec.points; ++i) {
            t.push_back(spec.t_min *
                        std::exp(ratio * static_cast<double>(i) / (spec.points - 1)));
        }
        t.back() = spec.t_max;
    }
    return t;
}

std::size_t parse_state_cap(const json& cfg) {
    const int cap = opt_int(cfg, "config", "state_cap",
                            static_cast<int>(FockBasis::kDefaultStateCap));
    if (cap < 1) throw ConfigError("state_cap must be >= 1");
    return static_cast<std::size_t>(cap);
}

// ------------------------------------------------------------- job context

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct JobContext {
    std::string kind;
    RunOptions opt;
    json config;
    fs::path out_dir;
    std::vector<std::string> outputs;     // declared up front
    std::vector<std::string> warnings;
    json extra_manifest = json::object(); // job-specific result fields
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    /// Validates the full output list before any compute.
    void declare_outputs(std::vector<std::string> names) {
        outputs = std::move(names);
        outputs.push_back("manifest.json");
        for (const auto& name : outputs) {
            const fs::path p = out_dir / name;
            if (!opt.overwrite && fs::exists(p)) {
                throw ConfigError("refusing to overwrite existing output: " + p.string());
            }
        }
    }

    void stamp(CsvTable& table) const {
        table.add_metadata("tool_version", kToolVersion);
        table.add_metadata("job", kind);
        table.add_metadata("config", config.dump());
        if (!opt.no_timestamp) table.add_metadata("generated", utc_timestamp());
    }

    void write(const CsvTable& table, const std::string& name) const {
        table.write_file(out_dir / name, opt.overwrite);
    }

    void finish() const {
        json manifest;
        manifest["job"] = kind;
        manifest["tool_version"] = kToolVersion;
        manifest["config"] = config;
        manifest["outputs"] = outputs;
        manifest["status"] = "ok";
        manifest["warnings"] = warnings;
        for (const auto& item : extra_manifest.items()) manifest[item.key()] = item.value();
        if (!opt.no_timestamp) {
            manifest["generated"] = utc_timestamp();
            const auto elapsed = std::chrono::steady_clock::now() - start;
            manifest["wall_time_s"] =
                std::chrono::duration<double>(elapsed).count();
        }
        const fs::path p = out_dir / "manifest.json";
        if (!opt.overwrite && fs::exists(p)) {
            throw ConfigError("refusing to overwrite existing output: " + p.string());
        }
        std::ofstream os(p);
        if (!os) throw Error("cannot open output file: " + p.string());
        os << manifest.dump(2) << '\n';
    }
};

StateVector initial_state(const std::string& which, const FockBasis& basis,
                          const LatticeOperators& ops, const BhmParams& nominal,
                          std::uint64_t seed) {
    if (which == "mott") return mott_state(basis);
    if (which == "ground") {
        EigOptions eo;
        eo.seed = seed;
        return ground_state(ops.assemble(nominal), eo).second;
    }
    throw ConfigError("initial_state must be 'mott' or 'ground'");
}

// ------------------------------------------------------------------- jobs

void run_echo_curve(JobContext& ctx) {
    const json& cfg = ctx.config;
    check_keys(cfg, "config", {"job", "lattice", "initial_state", "scenarios",
                               "time_grid", "propagation", "state_cap", "seed"});
    const LatticeSpec lat = parse_lattice(cfg);
    const std::string init = opt_str(cfg, "config", "initial_state", "ground");
    const PropagatorConfig pc = parse_propagation(cfg);
    const TimeGridSpec grid_spec = parse_time_grid(cfg, /*allow_auto=*/true);
    const std::size_t cap = parse_state_cap(cfg);
    const auto seed = static_cast<std::uint64_t>(opt_int(cfg, "config", "seed", 12345));

    const json& scen_json = require(cfg, "config", "scenarios");
    if (!scen_json.is_array() || scen_json.empty()) {
        throw ConfigError("scenarios must be a non-empty array");
    }
    struct ScenarioSpec {
        ScenarioKind kind;
        BhmParams base;
        double magnitude;
        std::string name;
    };
    std::vector<ScenarioSpec> specs;
    for (std::size_t i = 0; i < scen_json.size(); ++i) {
        const json& s = scen_json[i];
        const std::string ctx_name = "scenarios[" + std::to_string(i) + "]";
        check_keys(s, ctx_name, {"kind", "J", "U", "magnitude"});
        ScenarioSpec spec;
        spec.kind = scenario_kind_from_string(req_str(s, ctx_name, "kind"));
        spec.base.J = req_num(s, ctx_name, "J");
        spec.base.U = req_num(s, ctx_name, "U");
        spec.magnitude = opt_num(s, ctx_name, "magnitude", 0.0);
        spec.name = "echo_" + std::to_string(i) + "_" + to_string(spec.kind) + ".csv";
        specs.push_back(spec);
    }

    const bool combined = specs.size() > 1 &&
                          grid_spec.type != TimeGridSpec::Type::automatic;
    std::vector<std::string> names;
    for (const auto& s : specs) names.push_back(s.name);
    if (combined) names.push_back("echo_combined.csv");
    ctx.declare_outputs(std::move(names));

    const FockBasis basis = FockBasis::enumerate(lat, cap);
    const LatticeOperators ops = LatticeOperators::build(basis);

    std::vector<EchoCurve> curves;
    for (const auto& spec : specs) {
        const Scenario scen = make_scenario(ops, spec.kind, spec.base, spec.magnitude);
        const StateVector psi0 = initial_state(init, basis, ops, spec.base, seed);
        EchoCurve curve;
        if (grid_spec.type == TimeGridSpec::Type::automatic) {
            curve = auto_echo_curve(psi0, scen, pc, grid_spec.points);
        } else {
            curve = echo_curve(psi0, scen, make_time_grid(grid_spec), pc);
        }
        curve.metadata.emplace_back("initial_state", init);
        curves.push_back(std::move(curve));
    }

    for (std::size_t i = 0; i < curves.size(); ++i) {
        CsvTable table = echo_curve_table(curves[i]);
        ctx.stamp(table);
        ctx.write(table, specs[i].name);
    }
    if (combined) {
        CsvTable table;
        std::vector<std::string> cols = {"t"};
        for (std::size_t i = 0; i < specs.size(); ++i) {
            cols.push_back("f_" + std::to_string(i) + "_" + to_string(specs[i].kind));
        }
        table.set_columns(std::move(cols));
        for (std::size_t r = 0; r < curves[0].times.size(); ++r) {
            std::vector<std::string> row = {format_double(curves[0].times[r])};
            for (const auto& c : curves) row.push_back(format_double(c.fidelity[r]));
            table.add_row(std::move(row));
        }
        ctx.stamp(table);
        ctx.write(table, "echo_combined.csv");
    }
}

void run_sequence(JobContext& ctx) {
    const json& cfg = ctx.config;
    check_keys(cfg, "config", {"job", "lattice", "initial_state", "sequence",
                               "time_grid", "propagation", "state_cap", "seed"});
    const LatticeSpec lat = parse_lattice(cfg);
    const std::string init = opt_str(cfg, "config", "initial_state", "mott");
    const PropagatorConfig pc = parse_propagation(cfg);
    const TimeGridSpec grid_spec = parse_time_grid(cfg, /*allow_auto=*/false);
    const std::size_t cap = parse_state_cap(cfg);
    const auto seed = static_cast<std::uint64_t>(opt_int(cfg, "config", "seed", 12345));

    const json& sj = require(cfg, "config", "sequence");
    check_keys(sj, "sequence",
               {"J", "U", "F_background", "imprint", "phase_error", "pulse_tilt",
                "pulse_duration", "freeze_lattice_during_pulse", "delta_u",
                "boson_mass", "site_spacing"});
    SequenceSpec seq;
    seq.J = req_num(sj, "sequence", "J");
    seq.U = req_num(sj, "sequence", "U");
    seq.F_background = opt_num(sj, "sequence", "F_background", 0.0);
    const std::string imprint = opt_str(sj, "sequence", "imprint", "ideal");
    if (imprint == "ideal") {
        seq.imprint = SequenceSpec::Imprint::ideal;
    } else if (imprint == "pulsed") {
        seq.imprint = SequenceSpec::Imprint::pulsed;
    } else {
        throw ConfigError("sequence.imprint must be 'ideal' or 'pulsed'");
    }
    seq.phase_error = opt_num(sj, "sequence", "phase_error", 0.0);
    seq.pulse_tilt = opt_num(sj, "sequence", "pulse_tilt", 0.0);
    seq.pulse_duration = opt_num(sj, "sequence", "pulse_duration", 0.0);
    seq.freeze_lattice_during_pulse =
        opt_bool(sj, "sequence", "freeze_lattice_during_pulse", false);
    seq.delta_u = opt_num(sj, "sequence", "delta_u", 0.0);
    seq.boson_mass = opt_num(sj, "sequence", "boson_mass", 0.0);
    seq.site_spacing = opt_num(sj, "sequence", "site_spacing", 0.0);

    ctx.declare_outputs({"sequence.csv"});

    const FockBasis basis = FockBasis::enumerate(lat, cap);
    const LatticeOperators ops = LatticeOperators::build(basis);
    const BhmParams nominal{seq.J, seq.U, seq.F_background};
    const StateVector psi0 = initial_state(init, basis, ops, nominal, seed);

    const SequenceResult result =
        sequence_echo(basis, ops, psi0, seq, make_time_grid(grid_spec), pc);
    for (const auto& w : result.warnings) ctx.warnings.push_back(w);

    CsvTable table = echo_curve_table(result.curve);
    table.add_metadata("initial_state", init);
    ctx.stamp(table);
    ctx.write(table, "sequence.csv");
}

void run_scan_critical(JobContext& ctx) {
    const json& cfg = ctx.config;
    check_keys(cfg, "config", {"job", "sizes", "j_grid", "delta_j", "U", "gap",
                               "curve_points", "propagation", "state_cap"});
    const json& sizes_json = require(cfg, "config", "sizes");
    if (!sizes_json.is_array() || sizes_json.empty()) {
        throw ConfigError("sizes must be a non-empty array of integers");
    }
    std::vector<int> sizes;
    for (const json& s : sizes_json) {
        if (!s.is_number_integer()) throw ConfigError("sizes entries must be integers");
        const int n = s.get<int>();
        if (n < 2) throw ConfigError("sizes entries must be >= 2");
        sizes.push_back(n);
    }

    const json& jg = require(cfg, "config", "j_grid");
    check_keys(jg, "j_grid", {"start", "stop", "step"});
    const double start = req_num(jg, "j_grid", "start");
    const double stop = req_num(jg, "j_grid", "stop");
    const double step = req_num(jg, "j_grid", "step");
    if (step <= 0 || stop < start) {
        throw ConfigError("j_grid requires step > 0 and stop >= start");
    }
    std::vector<double> j_grid;
    for (double j = start; j <= stop + step / 2; j += step) j_grid.push_back(j);
    if (j_grid.size() < 4) throw ConfigError("j_grid must contain at least 4 points");

    ScanOptions so;
    so.U = opt_num(cfg, "config", "U", 1.0);
    so.delta_j = opt_num(cfg, "config", "delta_j", 0.05);
    so.compute_gap = opt_bool(cfg, "config", "gap", true);
    so.curve_points = opt_int(cfg, "config", "curve_points", 200);
    so.propagation = parse_propagation(cfg);
    so.state_cap = parse_state_cap(cfg);
    so.threads = ctx.opt.threads;
    if (so.delta_j <= 0) throw ConfigError("delta_j must be > 0");
    if (so.U <= 0) throw ConfigError("U must be > 0");

    std::vector<std::string> names;
    for (int n : sizes) names.push_back("scan_N" + std::to_string(n) + ".csv");
    ctx.declare_outputs(names);

    json per_point = json::object();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const CriticalScan scan = critical_scan(sizes[i], j_grid, so);
        CsvTable table = scan_table(scan);
        ctx.stamp(table);
        ctx.write(table, names[i]);

        json statuses = json::array();
        for (const auto& p : scan.points) {
            statuses.push_back({{"J", p.J}, {"status", p.status}});
        }
        per_point["N" + std::to_string(sizes[i])] = {
            {"peak_J", scan.peak_J},
            {"peak_height", scan.peak_height},
            {"all_ok", scan.all_ok()},
            {"points", statuses},
        };
        if (!scan.all_ok()) {
            ctx.warnings.push_back("scan N=" + std::to_string(sizes[i]) +
                                   " completed with failed points");
        }
    }
    ctx.extra_manifest["scans"] = per_point;
}

void run_spectrum(JobContext& ctx) {
    const json& cfg = ctx.config;
    check_keys(cfg, "config", {"job", "lattice", "params", "count", "spacing_ratio",
                               "state_cap", "seed", "tolerance"});
    const LatticeSpec lat = parse_lattice(cfg);
    const json& pj = require(cfg, "config", "params");
    check_keys(pj, "params", {"J", "U", "F"});
    BhmParams params;
    params.J = req_num(pj, "params", "J");
    params.U = req_num(pj, "params", "U");
    params.F = opt_num(pj, "params", "F", 0.0);

    const json& count_json = require(cfg, "config", "count");
    bool full = false;
    int count = 0;
    if (count_json.is_string() && count_json.get<std::string>() == "full") {
        full = true;
    } else if (count_json.is_number_integer()) {
        count = count_json.get<int>();
        if (count < 1) throw ConfigError("count must be >= 1 or 'full'");
    } else {
        throw ConfigError("count must be an integer or 'full'");
    }
    const bool want_ratio = opt_bool(cfg, "config", "spacing_ratio", false);
    const std::size_t cap = parse_state_cap(cfg);
    EigOptions eo;
    eo.seed = static_cast<std::uint64_t>(opt_int(cfg, "config", "seed", 12345));
    eo.tol = opt_num(cfg, "config", "tolerance", eo.tol);

    ctx.declare_outputs({"spectrum.csv"});

    const FockBasis basis = FockBasis::enumerate(lat, cap);
    const SparseHermitian h = assemble_hamiltonian(basis, params);
    const int k = full ? static_cast<int>(h.dim())
                       : std::min<int>(count, static_cast<int>(h.dim()));
    const SpectrumSlice slice =
        full ? low_spectrum_dense(h, k) : low_spectrum(h, k, eo);

    CsvTable table;
    table.add_metadata("n_sites", std::to_string(lat.n_sites));
    table.add_metadata("n_bosons", std::to_string(lat.n_bosons));
    table.add_metadata("J", format_double(params.J));
    table.add_metadata("U", format_double(params.U));
    table.add_metadata("F", format_double(params.F));
    table.add_metadata("count", full ? "full" : std::to_string(count));
    if (want_ratio) {
        const SpacingRatio r = spacing_ratio(slice.eigenvalues);
        table.add_metadata("mean_spacing_ratio", format_double(r.mean_r));
        table.add_metadata("n_ratios", std::to_string(r.n_ratios));
        table.add_metadata("n_degenerate", std::to_string(r.n_degenerate));
        ctx.extra_manifest["spacing_ratio"] = {{"mean_r", r.mean_r},
                                               {"n_ratios", r.n_ratios},
                                               {"n_degenerate", r.n_degenerate}};
    }
    table.set_columns({"index", "eigenvalue", "residual"});
    for (std::size_t i = 0; i < slice.eigenvalues.size(); ++i) {
        table.add_row({std::to_string(i), format_double(slice.eigenvalues[i]),
                       format_double(slice.residuals[i])});
    }
    ctx.stamp(table);
    ctx.write(table, "spectrum.csv");
}

void run_predict(JobContext& ctx) {
    const json& cfg = ctx.config;
    check_keys(cfg, "config", {"job", "kind", "J", "magnitude", "time_grid"});
    const std::string kind_name = req_str(cfg, "config", "kind");
    PerturbationKind kind;
    if (kind_name == "delta_j") {
        kind = PerturbationKind::delta_j;
    } else if (kind_name == "delta_u") {
        kind = PerturbationKind::delta_u;
    } else if (kind_name == "gravity") {
        kind = PerturbationKind::gravity;
    } else {
        throw ConfigError("kind must be one of delta_j, delta_u, gravity");
    }
    const double J = req_num(cfg, "config", "J");
    const double magnitude = req_num(cfg, "config", "magnitude");
    const TimeGridSpec grid_spec = parse_time_grid(cfg, /*allow_auto=*/false);

    ctx.declare_outputs({"predict.csv"});

    CsvTable table;
    table.add_metadata("kind", kind_name);
    table.add_metadata("J", format_double(J));
    table.add_metadata("magnitude", format_double(magnitude));
    const Prediction probe = perturbative_prediction(kind, J, magnitude, 0.0);
    table.add_metadata("validity_t_max", format_double(probe.validity_t_max));
    table.set_columns({"t", "f_pred", "within_validity"});
    for (double t : make_time_grid(grid_spec)) {
        const Prediction p = perturbative_prediction(kind, J, magnitude, t);
        table.add_row({format_double(t), format_double(p.fidelity),
                       p.within_validity ? "1" : "0"});
    }
    ctx.stamp(table);
    ctx.write(table, "predict.csv");
}

void report_error(const std::string& type, const std::string& message) {
    json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::cerr << err.dump() << '\n';
}

}  // namespace

CsvTable echo_curve_table(const EchoCurve& curve) {
    CsvTable table;
    for (const auto& [k, v] : curve.metadata) table.add_metadata(k, v);
    table.set_columns({"t", "f"});
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        table.add_row({format_double(curve.times[i]), format_double(curve.fidelity[i])});
    }
    return table;
}

CsvTable scan_table(const CriticalScan& scan) {
    CsvTable table;
    table.add_metadata("n_sites", std::to_string(scan.n_sites));
    table.add_metadata("n_bosons", std::to_string(scan.n_bosons));
    table.add_metadata("U", format_double(scan.U));
    table.add_metadata("delta_j", format_double(scan.delta_j));
    table.add_metadata("alpha0_oracle",
                       format_double(CriticalScan::alpha0_oracle(scan.n_sites, scan.delta_j)));
    table.add_metadata("alpha0_literature_convention",
                       format_double(CriticalScan::alpha0_literature_convention(scan.n_sites,
                                                                           scan.delta_j)));
    table.add_metadata("thermodynamic_jc", format_double(CriticalScan::kThermodynamicJc));
    table.add_metadata("peak_J", format_double(scan.peak_J));
    table.add_metadata("peak_height", format_double(scan.peak_height));
    table.set_columns({"J", "alpha_raw", "alpha_norm", "dalpha_dJ", "gap",
                       "fit_residual", "status"});
    for (const auto& p : scan.points) {
        std::string status = p.status;
        for (char& c : status) {
            if (c == ',' || c == '\n') c = ';';
        }
        table.add_row({format_double(p.J), format_double(p.alpha_raw),
                       format_double(p.alpha_norm), format_double(p.dalpha_dJ),
                       format_double(p.gap), format_double(p.fit_residual), status});
    }
    return table;
}

int run_job(const std::string& kind, const RunOptions& opt) {
    try {
        JobContext ctx;
        ctx.kind = kind;
        ctx.opt = opt;
        ctx.config = load_config(opt.config_path);
        ctx.out_dir = opt.out_dir.empty() ? fs::path(".") : opt.out_dir;

        if (!ctx.config.is_object()) throw ConfigError("config root must be an object");
        if (ctx.config.contains("job")) {
            const std::string declared = req_str(ctx.config, "config", "job");
            if (declared != kind) {
                throw ConfigError("config declares job '" + declared +
                                  "' but subcommand is '" + kind + "'");
            }
        }
        std::error_code ec;
        fs::create_directories(ctx.out_dir, ec);
        if (ec) throw ConfigError("cannot create output directory: " + ctx.out_dir.string());

        if (kind == "echo-curve") {
            run_echo_curve(ctx);
        } else if (kind == "sequence") {
            run_sequence(ctx);
        } else if (kind == "scan-critical") {
            run_scan_critical(ctx);
        } else if (kind == "spectrum") {
            run_spectrum(ctx);
        } else if (kind == "predict") {
            run_predict(ctx);
        } else {
            throw ConfigError("unknown job kind: " + kind);
        }
        ctx.finish();
        return 0;
    } catch (const ConfigError& e) {
        report_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error("compute", e.what());
        return 3;
    }
}

}  // namespace bhecho::runner
