#include "singprof/trace_io.hpp"

#include "singprof/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace singprof {

namespace {

constexpr const char* kModule = "trace_io";

std::string strip(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.pop_back();
    }
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return line.substr(i);
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return errno == 0 && end == text.c_str() + text.size() && std::isfinite(out);
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
    throw Error(ErrorKind::Io, kModule, name + ":" + std::to_string(line) + ": " + what);
}

} // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<RadialSample> read_radial_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) fail(name, 1, "empty file, expected header r,u");
    if (strip(line) != "r,u") fail(name, 1, "header must be r,u");
    std::vector<RadialSample> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            fail(name, lineno, "expected two comma-separated columns");
        }
        RadialSample row{};
        if (!parse_number(strip(line.substr(0, comma)), row.r) ||
            !parse_number(strip(line.substr(comma + 1)), row.u)) {
            fail(name, lineno, "malformed number");
        }
        if (!(row.r > 0.0)) fail(name, lineno, "r must be positive");
        if (!rows.empty() && !(row.r < rows.back().r)) fail(name, lineno, "r must be strictly decreasing");
        rows.push_back(row);
    }
    return rows;
}

std::vector<RadialSample> read_radial_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, kModule, "cannot open " + path);
    return read_radial_csv(in, path);
}

void write_radial_csv(std::ostream& out, const std::vector<RadialSample>& rows) {
    out << "r,u\n";
    for (const auto& row : rows) out << format_double(row.r) << ',' << format_double(row.u) << '\n';
}

void write_phase_csv(std::ostream& out, const std::vector<PhaseState>& rows) {
    out << "t,v,dv\n";
    for (const auto& row : rows) {
        out << format_double(row.t) << ',' << format_double(row.v) << ',' << format_double(row.dv)
            << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, kModule, "cannot open " + path + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, kModule, "write to " + path + " failed");
}

} // namespace singprof
