// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "CLI11.hpp"
#include "bhecho/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bhecho: Bose-Hubbard Loschmidt-echo simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", bhecho::runner::kToolVersion);

    bhecho::runner::RunOptions opt;
    std::string selected;
    for (const std::string kind :
         {"echo-curve", "sequence", "scan-critical", "spectrum", "predict"}) {
        CLI::App* sub = app.add_subcommand(kind, "Run a " + kind + " job");
        sub->add_option("--config", opt.config_path, "Path to the JSON run configuration")
            ->required();
        sub->add_option("--out", opt.out_dir, "Output directory (default: current)");
        sub->add_option("--threads", opt.threads,
                        "Worker threads for scan points (0 = all processors)");
        sub->add_flag("--overwrite", opt.overwrite, "Allow replacing existing outputs");
        sub->add_flag("--no-timestamp", opt.no_timestamp,
                      "Omit timestamps and wall time from outputs");
        sub->callback([&selected, kind] { selected = kind; });
    }

    CLI11_PARSE(app, argc, argv);
    return bhecho::runner::run_job(selected, opt);
}
