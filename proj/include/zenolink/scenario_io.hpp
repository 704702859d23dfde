#pragma once

#include <filesystem>
#include <string>

#include "zenolink/tdse.hpp"

namespace zenolink {

// Parse a scenario document. Throws std::invalid_argument with position info
// on malformed JSON or schema violations.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::string scenario_to_json_text(const ScenarioConfig& cfg);

} // namespace zenolink
