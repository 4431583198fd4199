// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace reprokit {

struct AgentAction {
    std::string name;
    std::string input;
};

// Every step carries an observation, possibly an error observation; the
// final answer is terminal output, not a step.
struct AgentStep {
    std::string thought;
    AgentAction action;
    std::string observation;
};

struct AgentTranscript {
    std::string agent;  // "paper" | "code"
    std::vector<AgentStep> steps;
    std::map<std::string, int> counters;  // per action name, equals step counts
    std::string final_text;
    bool budget_exhausted = false;

    nlohmann::ordered_json to_json() const;
    std::string dump() const { return to_json().dump(2) + "\n"; }
};

} // namespace reprokit
