#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzmux/experiment/scenario.hpp"

namespace ghzmux::experiment
{

/// Unreadable file, malformed JSON, unknown key or wrong value type.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input whose values violate an invariant (e.g. T2 <= 0).
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct LoadedConfig
{
    std::vector<Scenario>      scenarios;
    std::optional<std::string> grid;  // "start:stop:step" if given in the file
};

/// Accepts either one scenario object or {"scenarios": [...], "grid": "..."}.
/// Errors carry `source` plus a JSON pointer to the offending value.
LoadedConfig parse_config(const std::string& text, const std::string& source = "<config>");

LoadedConfig load_config(const std::filesystem::path& path);

}  // namespace ghzmux::experiment
