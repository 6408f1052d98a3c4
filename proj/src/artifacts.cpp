// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/run.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace nsm {

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + csv_escape(header[i]);
    text_ += "\n";
}

void CsvTable::row(const std::vector<std::string>& cells)
{
    if (cells.size() != width_) fail(ErrorCode::Internal, "csv: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + csv_escape(cells[i]);
    text_ += "\n";
    ++rows_;
}

std::string csv_escape(const std::string& c)
{
    if (c.find_first_of(",\"\r\n") == std::string::npos) return c;
    std::string o = "\"";
    for (char ch : c) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

std::string fmt_num(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    for (int p = 15; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream o(path, std::ios::binary | std::ios::trunc);
    if (!o) fail(ErrorCode::Io, "cannot write " + path);
    o << body;
    if (!o) fail(ErrorCode::Io, "write failed for " + path);
}

std::string resolve_out_dir(const RunConfig& cfg)
{
    if (!cfg.out.empty()) return cfg.out;
    if (const char* e = std::getenv("NSMLAB_OUT"); e && *e) return e;
    return "nsmlab_out";
}

}  // namespace nsm
