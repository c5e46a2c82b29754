#ifndef SINGPROF_CLI_JSON_OUT_HPP
#define SINGPROF_CLI_JSON_OUT_HPP

#include <json.hpp>

#include <string>

namespace singprof::cli {

/// Indented JSON with every floating value printed as %.17g; non-finite
/// values become null. Key order is the json object's (sorted), so equal
/// inputs give byte-identical text.
std::string to_json_text(const nlohmann::json& value);

} // namespace singprof::cli

#endif // SINGPROF_CLI_JSON_OUT_HPP
