// SPDX-License-Identifier: Apache-2.0
#include "reprokit/agent/react.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

#include <algorithm>

namespace reprokit {

nlohmann::ordered_json AgentTranscript::to_json() const {
    nlohmann::ordered_json j;
    j["agent"] = agent;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& step : steps)
        j["steps"].push_back({{"thought", step.thought},
                              {"action", {{"name", step.action.name}, {"input", step.action.input}}},
                              {"observation", step.observation}});
    j["counters"] = counters;
    j["final_text"] = final_text;
    j["budget_exhausted"] = budget_exhausted;
    return j;
}

namespace {

// First line index whose trimmed-left text starts with `tag`, or npos.
size_t find_tag(const std::vector<std::string>& lines, const std::string& tag, size_t from = 0) {
    for (size_t i = from; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string_view::npos) continue;
        if (line.substr(b).rfind(tag, 0) == 0) return i;
    }
    return std::string::npos;
}

std::string after_tag(const std::string& line, const std::string& tag) {
    size_t at = line.find(tag);
    return trim(line.substr(at + tag.size()));
}

// Everything after the tag on its line, plus all following lines.
std::string tail_from(const std::vector<std::string>& lines, size_t idx,
                      const std::string& tag) {
    std::string out = after_tag(lines[idx], tag);
    for (size_t i = idx + 1; i < lines.size(); ++i) {
        out += "\n";
        out += lines[i];
    }
    // trailing blank lines are noise
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r' || out.back() == ' '))
        out.pop_back();
    return out;
}

}  // namespace

std::optional<ParsedStep> parse_react_step(const std::string& completion) {
    std::vector<std::string> lines = split(completion, '\n');
    size_t thought_at = find_tag(lines, "Thought:");
    size_t action_at = find_tag(lines, "Action:");
    size_t final_at = find_tag(lines, "Final Answer:");

    ParsedStep step;
    if (thought_at != std::string::npos) {
        size_t stop = std::min(action_at, final_at);
        step.thought = after_tag(lines[thought_at], "Thought:");
        for (size_t i = thought_at + 1; i < lines.size() && i < stop; ++i)
            step.thought += "\n" + lines[i];
        step.thought = trim(step.thought);
    }

    if (final_at != std::string::npos && final_at < action_at) {
        step.final_answer = tail_from(lines, final_at, "Final Answer:");
        return step;
    }
    if (action_at != std::string::npos) {
        AgentAction action;
        action.name = after_tag(lines[action_at], "Action:");
        size_t input_at = find_tag(lines, "Action Input:", action_at);
        if (input_at != std::string::npos)
            action.input = tail_from(lines, input_at, "Action Input:");
        if (action.name.empty()) return std::nullopt;
        step.action = std::move(action);
        return step;
    }
    if (final_at != std::string::npos) {
        step.final_answer = tail_from(lines, final_at, "Final Answer:");
        return step;
    }
    return std::nullopt;
}

ReactResult run_react_loop(LlmClient& model, std::vector<Message>& messages,
                           const Toolbox& toolbox, const std::set<std::string>& allowed,
                           const StepLimits& limits, const std::string& agent_name,
                           const RetryPolicy& retry) {
    ReactResult result;
    result.transcript.agent = agent_name;
    bool previous_malformed = false;

    for (int step_no = 0; step_no < limits.max_steps; ++step_no) {
        std::string completion = llm_complete(model, messages, {}, retry);
        std::optional<ParsedStep> parsed = parse_react_step(completion);

        if (!parsed) {
            if (previous_malformed)
                throw MalformedStep("model failed to emit a well-formed step twice in a row");
            previous_malformed = true;
            AgentStep record;
            record.thought = trim(completion);
            record.action = {"Malformed", ""};
            record.observation = kFormatReminder;
            result.transcript.steps.push_back(record);
            ++result.transcript.counters["Malformed"];
            messages.push_back({"assistant", completion});
            messages.push_back({"user", kFormatReminder});
            continue;
        }
        previous_malformed = false;

        if (parsed->final_answer) {
            result.final_answer = *parsed->final_answer;
            result.transcript.final_text = *parsed->final_answer;
            return result;
        }

        std::string observation =
            dispatch_action(parsed->action->name, parsed->action->input, toolbox, allowed);
        AgentStep record;
        record.thought = parsed->thought;
        record.action = *parsed->action;
        record.observation = observation;
        result.transcript.steps.push_back(record);
        ++result.transcript.counters[parsed->action->name];

        messages.push_back({"assistant", completion});
        messages.push_back({"user", "Observation: " + observation});
    }

    result.transcript.budget_exhausted = true;
    return result;
}

} // namespace reprokit
