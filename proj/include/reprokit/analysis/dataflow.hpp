// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/analysis/segments.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace reprokit {

// Cross-segment def-use facts. Flow-insensitive within a segment,
// flow-sensitive across segments by program order: a read takes provenance
// from the latest strictly-earlier segment that defines or modifies the
// variable. Reads with no earlier writer (parameters, globals, free
// variables) are recorded with no provenance.
struct DataflowFacts {
    std::map<std::pair<int, std::string>, int> provenance;  // (use segment, var) -> def segment
    std::set<std::pair<int, std::string>> external_reads;
};

DataflowFacts def_use_chains(const std::vector<Segment>& segments);

} // namespace reprokit
