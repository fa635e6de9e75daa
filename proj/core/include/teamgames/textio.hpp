#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamgames {

// Shortest round-trip decimal formatting (std::to_chars). Every float the
// toolkit writes goes through this so that parse(serialize(x)) == x bit
// for bit.
std::string format_double(double value);

// Strict double parse of a whole token; rejects trailing garbage and
// accepts only finite values unless allow_nonfinite is set.
std::optional<double> parse_double_token(std::string_view token,
                                         bool allow_nonfinite = false);

std::vector<std::string_view> split_whitespace(std::string_view line);

}  // namespace teamgames
