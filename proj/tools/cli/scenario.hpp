#ifndef SINGPROF_CLI_SCENARIO_HPP
#define SINGPROF_CLI_SCENARIO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace singprof::cli {

enum class Command { Constants, Solve, Phase, Pohozaev, Classify, Mb, Crit };
enum class Space { Radial, EF };

const char* command_name(Command command);

struct Scenario {
    Command command = Command::Constants;
    int n = 0;
    double s = 0.0;
    double q = 0.0;
    double mu = 0.0;
    double tol = 1e-10;
    std::optional<std::string> out;
    std::optional<std::string> trace;
    Space space = Space::Radial;
    bool verify = false;

    // initial state (solve, pohozaev --profile solve, crit)
    std::optional<double> v0;
    std::optional<double> dv0;
    double t0 = 0.0;
    double t_end = 10.0;
    double stride = 0.1;

    // phase
    std::vector<double> k_levels;
    std::size_t workers = 4;

    // pohozaev / classify
    std::string profile;
    double lambda = 1.0;
    std::vector<double> radii;  // empty: 0.1, 1, 10, or the ends and middle of a finite span
    std::optional<double> r1;
    std::optional<double> r2;
    bool asymptotic = false;
    std::optional<std::string> input;
    double r_min = 1e-7;
    std::size_t per_decade = 40;

    // mb
    double r0 = 0.5;
    std::size_t count = 8;
};

struct ParseOutcome {
    std::optional<Scenario> scenario;  // empty when parsing stopped
    int exit_code = 0;
    std::string message;               // help text or usage error
    bool usage_error = false;
};

ParseOutcome parse_args(int argc, const char* const* argv);

} // namespace singprof::cli

#endif // SINGPROF_CLI_SCENARIO_HPP
