#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace agora {

/// Parses the declarative scenario format (a TOML subset) into JSON.
/// Supported: [dotted.section] headers, key = value pairs, strings, booleans,
/// integers, floats, (nested) arrays, and # comments. Unsupported syntax
/// (multiline strings, inline tables, array-of-tables) raises
/// std::invalid_argument with the offending line number.
nlohmann::json parse_toml_lite(const std::string& text);

nlohmann::json load_toml_file(const std::string& path);

}  // namespace agora
