#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace vring::cli {

/// Shortest round-trip decimal; "nan" for NaN.
inline std::string fmt_double(double x)
{
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace vring::cli
