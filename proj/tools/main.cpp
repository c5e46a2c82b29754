#include "cli/run.hpp"
#include "cli/json_out.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace singprof::cli;
    const ParseOutcome parsed = parse_args(argc, argv);
    if (!parsed.scenario) {
        if (parsed.usage_error) {
            std::cout << to_json_text(error_report("UsageError", "cli", parsed.message, parsed.exit_code).json);
        } else {
            std::cout << parsed.message;
        }
        return parsed.exit_code;
    }
    return emit(run(*parsed.scenario), &*parsed.scenario);
}
