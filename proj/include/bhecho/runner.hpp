// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "bhecho/analysis.hpp"
#include "bhecho/csv.hpp"
#include "bhecho/echo.hpp"

namespace bhecho::runner {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    int threads = 0;  ///< 0 = hardware concurrency (scan points only)
    bool overwrite = false;
    bool no_timestamp = false;
};

/// Executes one batch job. `kind` is one of: echo-curve, sequence,
/// scan-critical, spectrum, predict. Returns the process exit status:
/// 0 success, 2 config validation error, 3 compute failure. Errors are
/// reported as a JSON object on stderr.
int run_job(const std::string& kind, const RunOptions& opt);

/// Serializers shared with the acceptance suite (data rows are
/// byte-deterministic for identical inputs).
CsvTable echo_curve_table(const EchoCurve& curve);
CsvTable scan_table(const CriticalScan& scan);

}  // namespace bhecho::runner
