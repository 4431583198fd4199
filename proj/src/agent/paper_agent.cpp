// SPDX-License-Identifier: Apache-2.0
#include "reprokit/agent/paper_agent.hpp"

#include "reprokit/util/strings.hpp"

namespace reprokit {

namespace {

std::string paper_system_prompt() {
    return
        "You are a research assistant preparing a literature report for a code "
        "reproduction task. You are given the LaTeX description of an algorithm and the "
        "target function's signature. The description may omit details (hyperparameters, "
        "numerical-stability tricks, implementation logic). Gather the missing details "
        "from the paper and its cited literature using these actions:\n"
        "  SearchPaper — input: a free-text query; searches the whole target paper\n"
        "  SearchSection — input: a section label; returns that section's full content\n"
        "  SearchLiterature — input: {\"paper_id\": \"...\", \"query\": \"...\"}; searches "
        "a cited paper\n"
        "Work step by step. Each message must be exactly:\n"
        "Thought: <your reasoning>\n"
        "Action: <action name>\n"
        "Action Input: <input>\n"
        "After each action you receive an Observation. When you have enough, finish with:\n"
        "Thought: <your reasoning>\n"
        "Final Answer: <a literature report summarizing every detail needed to implement "
        "the algorithm>";
}

}  // namespace

std::string LiteratureReport::to_text() const {
    std::string out;
    for (const auto& f : findings)
        out += "- [" + f.provenance + "] " + f.question + "\n  " + f.answer + "\n";
    if (!summary.empty()) {
        if (!out.empty()) out += "\n";
        out += summary;
    }
    return out;
}

nlohmann::ordered_json LiteratureReport::to_json() const {
    nlohmann::ordered_json j;
    j["findings"] = nlohmann::ordered_json::array();
    for (const auto& f : findings)
        j["findings"].push_back(
            {{"question", f.question}, {"answer", f.answer}, {"provenance", f.provenance}});
    j["summary"] = summary;
    j["budget_exhausted"] = budget_exhausted;
    return j;
}

PaperAgentResult run_paper_agent(const TaskBundle& bundle, const Toolbox& toolbox,
                                 LlmClient& model, const StepLimits& limits,
                                 const RetryPolicy& retry) {
    std::vector<Message> messages = {
        {"system", paper_system_prompt()},
        {"user", "Algorithm description (LaTeX):\n" + bundle.algorithm_latex +
                     "\n\nTarget function signature:\n" + bundle.function_signature},
    };

    ReactResult loop =
        run_react_loop(model, messages, toolbox, paper_actions(), limits, "paper", retry);

    PaperAgentResult result;
    result.transcript = std::move(loop.transcript);
    for (const auto& step : result.transcript.steps) {
        if (!paper_actions().count(step.action.name)) continue;
        result.report.findings.push_back({step.action.input, step.observation,
                                          step.action.name});
    }
    if (loop.final_answer) {
        result.report.summary = trim(*loop.final_answer);
        if (result.report.summary.empty() && result.report.findings.empty())
            result.report.summary = "no additional details were required";
    } else {
        result.report.budget_exhausted = true;
        result.report.summary =
            "step budget exhausted; the findings above are the partial report";
    }
    return result;
}

} // namespace reprokit
