// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/analysis/complexity.hpp"
#include "reprokit/analysis/dataflow.hpp"
#include "reprokit/analysis/segments.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace reprokit {

struct ReasoningNode {
    std::string comment;
    int first_line = 0;
    int last_line = 0;
    ComplexityCounts counts;

    bool operator==(const ReasoningNode&) const = default;
};

// DAG by construction: edges run from lower to higher node index only.
struct ReasoningGraph {
    std::vector<ReasoningNode> nodes;
    std::set<std::pair<int, int>> edges;

    bool operator==(const ReasoningGraph&) const = default;
    bool empty() const { return nodes.empty(); }
};

// One node per segment; edge (i, j) iff some variable used in segment j has
// provenance segment i.
ReasoningGraph build_reasoning_graph(const std::vector<Segment>& segments,
                                     const DataflowFacts& dataflow);

// extract_segments + def_use_chains + build in one step.
ReasoningGraph graph_from_source(const std::string& source);

nlohmann::ordered_json graph_to_json(const ReasoningGraph& graph);
ReasoningGraph graph_from_json(const nlohmann::json& j);  // validates invariants

} // namespace reprokit
