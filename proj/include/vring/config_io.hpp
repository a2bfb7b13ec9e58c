#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vring/optimizer.hpp"
#include "vring/ring_model.hpp"

namespace vring {

struct RunConfig {
    RingConfig ring;
    StudyConfig study;
};

/// Flat `key = value` text (one per line, `#` comments) or a flat JSON
/// object. Keys are the RingConfig / StudyConfig field names; unknown keys
/// and unparsable values throw ConfigError. Real values accept `a/b`.
RunConfig parse_run_config(const std::string& text);

/// Throws ConfigError naming the path when it cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

/// Applies one key/value pair (used by the parser and by CLI overrides).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// Key-value text that parses back to the same configuration.
std::string config_to_text(const RunConfig& cfg);

} // namespace vring
