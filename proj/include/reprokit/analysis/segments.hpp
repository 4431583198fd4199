// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/analysis/complexity.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reprokit {

// Reasoning markers are full-line comments whose payload starts with this
// prefix; the agent prompts mandate the same form, which makes the
// non-overlapping / non-nested property hold by construction.
inline constexpr std::string_view kMarkerPrefix = "step:";

struct Segment {
    int index = 0;              // 0-based, program order
    std::string comment;        // marker payload after the prefix
    int first_line = 0;         // inclusive; first_line > last_line means empty
    int last_line = 0;
    std::set<std::string> defs; // defined or modified in the span
    std::set<std::string> uses; // read in the span
    ComplexityCounts counts;
};

// One segment per marker inside the annotated function; each span runs from
// the line after its marker to the line before the next one (or the function
// end). Throws ParseError / MissingAnnotations.
std::vector<Segment> extract_segments(const std::string& source,
                                      std::string_view marker_prefix = kMarkerPrefix);

} // namespace reprokit
