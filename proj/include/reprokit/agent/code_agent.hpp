// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/agent/paper_agent.hpp"

#include <string>
#include <vector>

namespace reprokit {

struct GeneratedCode {
    std::string source;  // full function definition with reasoning markers
    std::vector<std::string> declared_dependencies;  // "# uses: name" header notes
};

struct CodeAgentResult {
    GeneratedCode code;
    AgentTranscript transcript;
};

// single_shot = true is the no-actions ablation: one completion, zero steps.
// The final code must contain at least one reasoning marker; a markerless
// answer earns one reprompt, a second raises MalformedStep. Budget
// exhaustion yields empty source (classified syntax downstream).
CodeAgentResult run_code_agent(const TaskBundle& bundle, const LiteratureReport& report,
                               const Toolbox& toolbox, LlmClient& model, bool single_shot,
                               const StepLimits& limits = {.max_steps = 40},
                               const RetryPolicy& retry = {});

// Pulls the code out of a final answer: first fenced block when present,
// the raw text otherwise; also harvests "# uses:" dependency notes.
GeneratedCode parse_generated_code(const std::string& final_answer);

} // namespace reprokit
