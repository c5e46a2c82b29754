#ifndef SINGPROF_CLI_RUN_HPP
#define SINGPROF_CLI_RUN_HPP

#include "cli/scenario.hpp"

#include <singprof/error.hpp>

#include <json.hpp>

#include <string>

namespace singprof::cli {

struct RunReport {
    nlohmann::json json;
    int exit_code = 0;
};

/// 2 domain/regime, 3 numerical, 4 I/O.
int exit_code_for(ErrorKind kind);

RunReport error_report(const std::string& error, const std::string& module, const std::string& detail,
                       int exit_code);

/// Runs the scenario, writing any --trace file. Never throws for module
/// errors; they come back as an error report with a nonzero exit code.
RunReport run(const Scenario& scenario);

/// Writes the report to --out or stdout; returns the process exit code.
int emit(const RunReport& report, const Scenario* scenario);

} // namespace singprof::cli

#endif // SINGPROF_CLI_RUN_HPP
