// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reprokit {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Splits on any run of whitespace; no empty pieces.
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercases, replaces every non-alphanumeric byte with a space, splits.
// This is the comment normalization used by the lexical node matcher.
std::set<std::string> token_set(std::string_view s);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

} // namespace reprokit
