// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/graph/reasoning_graph.hpp"
#include "reprokit/graph/significance.hpp"
#include "reprokit/llm/client.hpp"

#include <set>
#include <string>
#include <vector>

namespace reprokit {

// node_map[r] = generated nodes matching reference node r (may be empty;
// one reference node may map to several generated nodes, and a generated
// node may be reused).
using NodeMap = std::vector<std::set<int>>;

class NodeMatcher {
public:
    virtual ~NodeMatcher() = default;
    virtual NodeMap match(const ReasoningGraph& ref, const ReasoningGraph& gen) = 0;
    virtual std::string name() const = 0;
};

// r -> {r} when the index exists in the generated graph.
class IdentityMatcher : public NodeMatcher {
public:
    NodeMap match(const ReasoningGraph& ref, const ReasoningGraph& gen) override;
    std::string name() const override { return "identity"; }
};

// Token-set Jaccard over lowercased, punctuation-stripped comments.
class LexicalMatcher : public NodeMatcher {
public:
    explicit LexicalMatcher(double tau = 0.5): tau_(tau) {}
    NodeMap match(const ReasoningGraph& ref, const ReasoningGraph& gen) override;
    std::string name() const override { return "lexical"; }

private:
    double tau_;
};

// Replays a fixed sequence of node maps (one per run); wraps around.
class ScriptedMatcher : public NodeMatcher {
public:
    explicit ScriptedMatcher(std::vector<NodeMap> maps): maps_(std::move(maps)) {}
    NodeMap match(const ReasoningGraph& ref, const ReasoningGraph& gen) override;
    std::string name() const override { return "scripted"; }

private:
    std::vector<NodeMap> maps_;
    size_t next_ = 0;
};

// One structured request carrying both comment lists; the response must be
// a JSON correspondence. A malformed response is retried once with a
// corrective prompt, then raises MalformedMatcherOutput; a dead backend
// raises MatcherUnavailable.
class LlmMatcher : public NodeMatcher {
public:
    explicit LlmMatcher(LlmClient& client, RetryPolicy retry = {}):
        client_(client), retry_(retry) {}
    NodeMap match(const ReasoningGraph& ref, const ReasoningGraph& gen) override;
    std::string name() const override { return "llm"; }

private:
    LlmClient& client_;
    RetryPolicy retry_;
};

struct MatchResult {
    NodeMap node_map;
    std::set<int> matched_nodes;
    std::set<std::pair<int, int>> matched_edges;
};

NodeMap match_nodes(const ReasoningGraph& ref, const ReasoningGraph& gen, NodeMatcher& matcher);

// Reference edge (a, b) is matched iff both endpoints are matched and some
// generated node matching a reaches one matching b over a directed path of
// length >= 1 (BFS reachability).
std::set<std::pair<int, int>> match_edges(const ReasoningGraph& ref, const ReasoningGraph& gen,
                                          const NodeMap& node_map);

MatchResult match_graphs(const ReasoningGraph& ref, const ReasoningGraph& gen,
                         NodeMatcher& matcher);

// Significance-weighted sum over matched reference nodes and edges,
// averaged over `runs` independent matcher invocations. An empty generated
// graph scores 0 without consulting the matcher.
double score_reasoning_accuracy(const ReasoningGraph& ref, const ReasoningGraph& gen,
                                NodeMatcher& matcher, int runs = 3);

} // namespace reprokit
