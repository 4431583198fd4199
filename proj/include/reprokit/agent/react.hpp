// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/agent/actions.hpp"
#include "reprokit/agent/transcript.hpp"
#include "reprokit/llm/client.hpp"

#include <optional>
#include <set>
#include <string>

namespace reprokit {

// Step wire format the model must emit:
//
//   Thought: <free text>
//   Action: <name>
//   Action Input: <rest of the message>
//
// or, to finish:
//
//   Thought: <free text>
//   Final Answer: <rest of the message>
//
// One reprompt is granted after a malformed step; a second consecutive
// failure raises MalformedStep. A malformed attempt is recorded as a step
// (action name "Malformed") and consumes budget.
struct ParsedStep {
    std::string thought;
    std::optional<AgentAction> action;
    std::optional<std::string> final_answer;
};

std::optional<ParsedStep> parse_react_step(const std::string& completion);

struct StepLimits {
    int max_steps = 20;
};

struct ReactResult {
    std::optional<std::string> final_answer;  // absent on budget exhaustion
    AgentTranscript transcript;
};

inline constexpr const char* kFormatReminder =
    "Your last message did not follow the required format. Emit either\n"
    "Thought: ...\nAction: <name>\nAction Input: <input>\n"
    "or\nThought: ...\nFinal Answer: <answer>";

// Drives thought -> action -> observation until the model emits a final
// answer or the step budget runs out. The message list grows in place so a
// caller can continue the conversation (for example to ask for missing
// reasoning markers).
ReactResult run_react_loop(LlmClient& model, std::vector<Message>& messages,
                           const Toolbox& toolbox, const std::set<std::string>& allowed,
                           const StepLimits& limits, const std::string& agent_name,
                           const RetryPolicy& retry = {});

} // namespace reprokit
