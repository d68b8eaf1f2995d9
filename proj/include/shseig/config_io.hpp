#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "shseig/types.hpp"

namespace shseig {

/// Parses the line-based `key = value` coefficient format. `#` starts a
/// comment; the ten keys T, H11..H33 are all required, duplicates and
/// unknown keys are rejected. Throws ConfigError.
Coefficients parse_config(std::istream& in, std::string_view origin = "<stream>");
Coefficients parse_config_file(const std::string& path);

// Canonical emission; parse_config(write_config(c)) reproduces c bit-exactly.
void write_config(std::ostream& out, const Coefficients& c);

// %.17g with negative zero folded to zero; round-trips doubles exactly.
std::string format_g17(double v);

}  // namespace shseig
