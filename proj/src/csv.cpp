// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#include "bhecho/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bhecho/errors.hpp"

namespace bhecho {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == value) return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void CsvTable::add_metadata(std::string key, std::string value) {
    metadata_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::set_columns(std::vector<std::string> columns) {
    columns_ = std::move(columns);
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (!columns_.empty() && cells.size() != columns_.size()) {
        throw DomainError("CsvTable: row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (const auto& [k, v] : metadata_) os << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << columns_[i];
    }
    if (!columns_.empty()) os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

void CsvTable::write_file(const std::filesystem::path& path, bool overwrite) const {
    if (!overwrite && std::filesystem::exists(path)) {
        throw ConfigError("refusing to overwrite existing output: " + path.string());
    }
    std::ofstream os(path);
    if (!os) throw Error("cannot open output file: " + path.string());
    os << to_string();
}

}  // namespace bhecho
