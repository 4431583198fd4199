// SPDX-License-Identifier: Apache-2.0
#include "reprokit/graph/significance.hpp"

#include "reprokit/errors.hpp"

namespace reprokit {

double SignificanceMap::node_total() const {
    double total = 0.0;
    for (double s : node_sig) total += s;
    return total;
}

double SignificanceMap::edge_total() const {
    double total = 0.0;
    for (const auto& [edge, s] : edge_sig) total += s;
    return total;
}

SignificanceMap assign_significance(const ReasoningGraph& graph) {
    if (graph.nodes.empty()) throw EmptyInput("cannot assign significance to an empty graph");

    SignificanceMap sig;
    double raw_sum = 0.0;
    std::vector<double> raw(graph.nodes.size());
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        raw[i] = static_cast<double>(graph.nodes[i].counts.raw());
        raw_sum += raw[i];
    }

    const double node_mass = graph.edges.empty() ? 1.0 : 0.5;
    sig.node_sig.resize(graph.nodes.size());
    for (size_t i = 0; i < graph.nodes.size(); ++i)
        sig.node_sig[i] = node_mass * raw[i] / raw_sum;

    if (!graph.edges.empty()) {
        double weight_sum = 0.0;
        for (const auto& [a, b] : graph.edges) weight_sum += raw[a] * raw[b];
        for (const auto& [a, b] : graph.edges)
            sig.edge_sig[{a, b}] = 0.5 * raw[a] * raw[b] / weight_sum;
    }
    return sig;
}

} // namespace reprokit
