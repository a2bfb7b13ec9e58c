#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace vring::cli {

inline constexpr const char* kToolVersion = "0.3.0";

std::string sha256_file(const std::filesystem::path& path);

std::string utc_timestamp();

/// Writes text to path, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// manifest.json in dir: tool, version, argv, config echo, seed, timestamps and
/// an inventory of `files` (relative to dir) with sizes and SHA-256 digests.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& argv,
                    const nlohmann::ordered_json& config, std::uint64_t seed,
                    const std::string& started_at, const std::vector<std::string>& files);

} // namespace vring::cli
