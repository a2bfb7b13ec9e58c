#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vring/optimizer.hpp"

namespace vring {

/// One compact JSON object, keys in the fixed order
/// trial_id, phase, score, madc, feasible_fraction, coeffs, elapsed.
std::string trial_to_json_line(const TrialRecord& rec);

/// Throws LogCorrupt (line number 1-based) on malformed input.
TrialRecord trial_from_json_line(const std::string& line, std::size_t line_no);

/// Reads every record of an existing log; a missing file yields an empty
/// history. Enforces trial_id = 0, 1, 2, ... and the expected coefficient
/// dimension.
std::vector<TrialRecord> read_trial_log(const std::filesystem::path& path, std::size_t expected_dim);

} // namespace vring
