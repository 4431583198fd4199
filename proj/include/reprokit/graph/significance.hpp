// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/graph/reasoning_graph.hpp"

#include <map>
#include <vector>

namespace reprokit {

// Normalized weights over a reference graph. Node and edge families each
// carry half of the total mass; an edgeless graph puts all mass on nodes,
// so a full match always scores exactly 1.
struct SignificanceMap {
    std::vector<double> node_sig;
    std::map<std::pair<int, int>, double> edge_sig;

    double node_total() const;
    double edge_total() const;
};

// node weight = raw complexity; edge weight = product of endpoint raws.
// Throws EmptyInput on a graph with no nodes.
SignificanceMap assign_significance(const ReasoningGraph& graph);

} // namespace reprokit
