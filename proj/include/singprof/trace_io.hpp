#ifndef SINGPROF_TRACE_IO_HPP
#define SINGPROF_TRACE_IO_HPP

#include "singprof/classifier.hpp"
#include "singprof/dynamics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace singprof {

/// Two-column CSV with mandatory header `r,u` and strictly decreasing r.
/// IoError on unreadable files, bad headers or malformed rows.
std::vector<RadialSample> read_radial_csv(std::istream& in, const std::string& name = "<stream>");
std::vector<RadialSample> read_radial_csv_file(const std::string& path);

void write_radial_csv(std::ostream& out, const std::vector<RadialSample>& rows);
void write_phase_csv(std::ostream& out, const std::vector<PhaseState>& rows);

/// Opens (truncating) a file for writing; IoError when that fails.
void write_text_file(const std::string& path, const std::string& contents);

/// %.17g, the format used for every number the tools write.
std::string format_double(double x);

} // namespace singprof

#endif // SINGPROF_TRACE_IO_HPP
