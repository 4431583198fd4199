// SPDX-License-Identifier: Apache-2.0
#include "reprokit/graph/matching.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

#include <deque>

namespace reprokit {

NodeMap IdentityMatcher::match(const ReasoningGraph& ref, const ReasoningGraph& gen) {
    NodeMap map(ref.nodes.size());
    for (size_t i = 0; i < ref.nodes.size(); ++i)
        if (i < gen.nodes.size()) map[i].insert(static_cast<int>(i));
    return map;
}

NodeMap LexicalMatcher::match(const ReasoningGraph& ref, const ReasoningGraph& gen) {
    std::vector<std::set<std::string>> gen_tokens;
    gen_tokens.reserve(gen.nodes.size());
    for (const auto& node : gen.nodes) gen_tokens.push_back(token_set(node.comment));

    NodeMap map(ref.nodes.size());
    for (size_t r = 0; r < ref.nodes.size(); ++r) {
        std::set<std::string> ref_tokens = token_set(ref.nodes[r].comment);
        for (size_t g = 0; g < gen.nodes.size(); ++g)
            if (jaccard(ref_tokens, gen_tokens[g]) >= tau_) map[r].insert(static_cast<int>(g));
    }
    return map;
}

NodeMap ScriptedMatcher::match(const ReasoningGraph& ref, const ReasoningGraph&) {
    if (maps_.empty()) return NodeMap(ref.nodes.size());
    NodeMap map = maps_[next_ % maps_.size()];
    ++next_;
    map.resize(ref.nodes.size());
    return map;
}

NodeMap LlmMatcher::match(const ReasoningGraph& ref, const ReasoningGraph& gen) {
    nlohmann::ordered_json request;
    auto comments = [](const ReasoningGraph& g) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& node : g.nodes) arr.push_back(node.comment);
        return arr;
    };
    request["reference"] = comments(ref);
    request["generated"] = comments(gen);

    const std::string system =
        "You align reasoning steps between two implementations of the same algorithm. "
        "Given the reference comment list and the generated comment list, map every "
        "reference step (by 0-based index) to the generated steps that express the same "
        "reasoning. A reference step may map to zero, one, or several generated steps. "
        "Reply with JSON only: {\"matches\": [{\"ref\": <int>, \"gen\": [<int>, ...]}, ...]}";

    std::vector<Message> messages = {{"system", system}, {"user", request.dump(2)}};

    auto parse_map = [&](const std::string& text) -> NodeMap {
        size_t open = text.find('{');
        size_t close = text.rfind('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw MalformedMatcherOutput("no JSON object in matcher response");
        NodeMap map(ref.nodes.size());
        try {
            auto parsed = nlohmann::json::parse(text.substr(open, close - open + 1));
            for (const auto& item : parsed.at("matches")) {
                int r = item.at("ref").get<int>();
                if (r < 0 || r >= static_cast<int>(ref.nodes.size())) continue;
                for (const auto& g : item.at("gen")) {
                    int gi = g.get<int>();
                    if (gi >= 0 && gi < static_cast<int>(gen.nodes.size())) map[r].insert(gi);
                }
            }
        } catch (const nlohmann::json::exception& e) {
            throw MalformedMatcherOutput(std::string("unparseable correspondence: ") + e.what());
        }
        return map;
    };

    std::string response;
    try {
        response = llm_complete(client_, messages, {}, retry_);
    } catch (const LlmError& e) {
        throw MatcherUnavailable(std::string("matcher backend down: ") + e.what());
    }
    try {
        return parse_map(response);
    } catch (const MalformedMatcherOutput&) {
        messages.push_back({"assistant", response});
        messages.push_back({"user",
                            "That was not valid JSON. Reply with exactly one JSON object of "
                            "the form {\"matches\": [{\"ref\": 0, \"gen\": [0]}]} and nothing "
                            "else."});
        std::string retry_response;
        try {
            retry_response = llm_complete(client_, messages, {}, retry_);
        } catch (const LlmError& e) {
            throw MatcherUnavailable(std::string("matcher backend down: ") + e.what());
        }
        return parse_map(retry_response);  // second failure propagates
    }
}

NodeMap match_nodes(const ReasoningGraph& ref, const ReasoningGraph& gen, NodeMatcher& matcher) {
    if (ref.empty() || gen.empty()) throw EmptyInput("match_nodes requires non-empty graphs");
    NodeMap map = matcher.match(ref, gen);
    map.resize(ref.nodes.size());
    return map;
}

std::set<std::pair<int, int>> match_edges(const ReasoningGraph& ref, const ReasoningGraph& gen,
                                          const NodeMap& node_map) {
    std::vector<std::vector<int>> adjacency(gen.nodes.size());
    for (const auto& [a, b] : gen.edges) adjacency[a].push_back(b);

    auto reachable = [&](const std::set<int>& sources, const std::set<int>& targets) {
        std::vector<char> seen(gen.nodes.size(), 0);
        std::deque<int> queue;
        for (int s : sources)
            for (int next : adjacency[s])
                if (!seen[next]) {
                    seen[next] = 1;
                    queue.push_back(next);
                }
        while (!queue.empty()) {
            int at = queue.front();
            queue.pop_front();
            if (targets.count(at)) return true;
            for (int next : adjacency[at])
                if (!seen[next]) {
                    seen[next] = 1;
                    queue.push_back(next);
                }
        }
        return false;
    };

    std::set<std::pair<int, int>> matched;
    for (const auto& edge : ref.edges) {
        const auto& [a, b] = edge;
        if (a >= static_cast<int>(node_map.size()) || b >= static_cast<int>(node_map.size()))
            continue;
        if (node_map[a].empty() || node_map[b].empty()) continue;
        if (reachable(node_map[a], node_map[b])) matched.insert(edge);
    }
    return matched;
}

MatchResult match_graphs(const ReasoningGraph& ref, const ReasoningGraph& gen,
                         NodeMatcher& matcher) {
    MatchResult result;
    result.node_map = match_nodes(ref, gen, matcher);
    for (size_t r = 0; r < result.node_map.size(); ++r)
        if (!result.node_map[r].empty()) result.matched_nodes.insert(static_cast<int>(r));
    result.matched_edges = match_edges(ref, gen, result.node_map);
    return result;
}

double score_reasoning_accuracy(const ReasoningGraph& ref, const ReasoningGraph& gen,
                                NodeMatcher& matcher, int runs) {
    if (ref.empty()) throw EmptyInput("reference graph is empty");
    if (runs < 1) throw EmptyInput("runs must be >= 1");
    if (gen.empty()) return 0.0;

    SignificanceMap sig = assign_significance(ref);
    double total = 0.0;
    for (int run = 0; run < runs; ++run) {
        MatchResult match = match_graphs(ref, gen, matcher);
        double score = 0.0;
        for (int node : match.matched_nodes) score += sig.node_sig[node];
        for (const auto& edge : match.matched_edges) score += sig.edge_sig.at(edge);
        total += score;
    }
    return total / runs;
}

} // namespace reprokit
