// SPDX-License-Identifier: Apache-2.0
#include "reprokit/graph/reasoning_graph.hpp"

#include "reprokit/errors.hpp"

namespace reprokit {

ReasoningGraph build_reasoning_graph(const std::vector<Segment>& segments,
                                     const DataflowFacts& dataflow) {
    ReasoningGraph graph;
    graph.nodes.reserve(segments.size());
    for (const auto& seg : segments)
        graph.nodes.push_back({seg.comment, seg.first_line, seg.last_line, seg.counts});
    for (const auto& [use, def] : dataflow.provenance) {
        int j = use.first;
        if (def < j) graph.edges.insert({def, j});
    }
    return graph;
}

ReasoningGraph graph_from_source(const std::string& source) {
    std::vector<Segment> segments = extract_segments(source);
    return build_reasoning_graph(segments, def_use_chains(segments));
}

nlohmann::ordered_json graph_to_json(const ReasoningGraph& graph) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : graph.nodes) {
        j["nodes"].push_back({
            {"comment", node.comment},
            {"span", {node.first_line, node.last_line}},
            {"counts",
             {{"var_defs", node.counts.var_defs},
              {"var_uses", node.counts.var_uses},
              {"calls", node.counts.calls},
              {"arith_ops", node.counts.arith_ops},
              {"loc", node.counts.loc}}},
        });
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : graph.edges) j["edges"].push_back({a, b});
    return j;
}

ReasoningGraph graph_from_json(const nlohmann::json& j) {
    ReasoningGraph graph;
    try {
        for (const auto& item : j.at("nodes")) {
            ReasoningNode node;
            node.comment = item.at("comment").get<std::string>();
            node.first_line = item.at("span").at(0).get<int>();
            node.last_line = item.at("span").at(1).get<int>();
            const auto& counts = item.at("counts");
            node.counts.var_defs = counts.at("var_defs").get<int>();
            node.counts.var_uses = counts.at("var_uses").get<int>();
            node.counts.calls = counts.at("calls").get<int>();
            node.counts.arith_ops = counts.at("arith_ops").get<int>();
            node.counts.loc = counts.at("loc").get<int>();
            if (node.comment.empty())
                throw SchemaViolation("reference_graph", "node comment must be non-empty");
            graph.nodes.push_back(std::move(node));
        }
        for (const auto& pair : j.at("edges")) {
            int a = pair.at(0).get<int>();
            int b = pair.at(1).get<int>();
            if (a < 0 || b < 0 || a >= static_cast<int>(graph.nodes.size()) ||
                b >= static_cast<int>(graph.nodes.size()))
                throw SchemaViolation("reference_graph", "edge endpoint out of range");
            if (a >= b)
                throw SchemaViolation("reference_graph",
                                      "edges must run from lower to higher node index");
            graph.edges.insert({a, b});
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation("reference_graph", e.what());
    }
    return graph;
}

} // namespace reprokit
