#pragma once

#include <string>

#include "json.hpp"

namespace levlab::toml_lite {

/// Parses the subset of TOML used by run configs: comments, [table] and
/// [a.b] headers, bare/quoted/dotted keys, strings, numbers, booleans,
/// arrays (possibly multi-line) and inline tables. Key order is preserved.
/// Throws ConfigError with the offending line number.
nlohmann::ordered_json parse(const std::string& text);

nlohmann::ordered_json parse_file(const std::string& path);

}  // namespace levlab::toml_lite
