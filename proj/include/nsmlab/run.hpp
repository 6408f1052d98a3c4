// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/config.hpp"
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/illposed.hpp"
#include "nsmlab/solver.hpp"

#include <string>
#include <vector>

namespace nsm {

/// RFC-4180 writer: header row, LF line ends, quoting only where needed.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    std::string str() const { return text_; }
    std::size_t rows() const { return rows_; }

private:
    std::size_t width_;
    std::size_t rows_ = 0;
    std::string text_;
};

std::string csv_escape(const std::string& cell);
/// Shortest form that reads back to the same double ("%.17g" fallback).
std::string fmt_num(double x);
void write_file(const std::string& path, const std::string& body);
/// cfg.out, else $NSMLAB_OUT, else "nsmlab_out".
std::string resolve_out_dir(const RunConfig& cfg);

PhysicalParams params_from_config(const RunConfig& cfg);
GevreyWeight weight_from_config(const RunConfig& cfg);
InitialDataSpec data_from_config(const RunConfig& cfg);
IllposedParams illposed_from_config(const RunConfig& cfg);

struct ExecResult {
    /// 0 on pass, otherwise an ErrorCode value.
    int code = 0;
    std::string status = "pass";
    std::string reason;
    std::string out_dir;
    std::string hash;
    std::string summary_json;
    std::string csv_path;
    double wall_seconds = 0.0;
};

/// Runs the configured mode and writes manifest.json, <mode>.csv and summary.json.
/// Configuration and I/O problems throw; study verdicts are returned.
ExecResult execute(const RunConfig& cfg);

}  // namespace nsm
