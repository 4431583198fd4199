// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/agent/react.hpp"
#include "reprokit/bundle/task_bundle.hpp"

#include <string>
#include <vector>

namespace reprokit {

struct ReportFinding {
    std::string question;
    std::string answer;
    std::string provenance;  // action name that produced it
};

// Distilled findings that fill gaps in the algorithm's LaTeX description;
// the Code Agent consumes this, not the Paper Agent's raw transcript.
struct LiteratureReport {
    std::vector<ReportFinding> findings;  // one per retrieval step
    std::string summary;                  // the agent's final answer
    bool budget_exhausted = false;

    std::string to_text() const;
    nlohmann::ordered_json to_json() const;
};

struct PaperAgentResult {
    LiteratureReport report;
    AgentTranscript transcript;
};

// ReAct loop over the paper-side actions. On budget exhaustion the report
// is assembled from the accumulated findings and flagged.
PaperAgentResult run_paper_agent(const TaskBundle& bundle, const Toolbox& toolbox,
                                 LlmClient& model, const StepLimits& limits = {},
                                 const RetryPolicy& retry = {});

} // namespace reprokit
