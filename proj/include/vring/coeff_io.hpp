#pragma once

#include <filesystem>
#include <string>

#include "vring/ring_model.hpp"

namespace vring {

/// {"J": int, "K": int, "c": [2][2][J+1][K+1]} with l = 1, 2 then m = 1 (sine),
/// m = 2 (cosine). Doubles are written in shortest round-trip form.
std::string coefficients_to_json(const CoefficientTensor& c);

/// Throws ConfigError on malformed or ragged input.
CoefficientTensor coefficients_from_json(const std::string& text);

void write_coefficients(const std::filesystem::path& path, const CoefficientTensor& c);

/// Throws ConfigError naming the path if it cannot be read or parsed.
CoefficientTensor read_coefficients(const std::filesystem::path& path);

} // namespace vring
