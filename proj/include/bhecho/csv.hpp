// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bhecho {

/// Shortest round-trip decimal representation; identical across runs.
std::string format_double(double value);

/// CSV document with '# key=value' metadata lines before the header row.
class CsvTable {
public:
    void add_metadata(std::string key, std::string value);
    void set_columns(std::vector<std::string> columns);
    void add_row(std::vector<std::string> cells);

    std::string to_string() const;

    /// Refuses to replace an existing file unless overwrite is set.
    void write_file(const std::filesystem::path& path, bool overwrite) const;

private:
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace bhecho
