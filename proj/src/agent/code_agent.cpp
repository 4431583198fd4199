// SPDX-License-Identifier: Apache-2.0
#include "reprokit/agent/code_agent.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

namespace reprokit {

namespace {

std::string code_system_prompt(bool with_actions) {
    std::string prompt =
        "You implement one function inside an existing repository so that it reproduces "
        "the algorithm described below. Reuse the repository's helpers and imports where "
        "they fit. Mark every reasoning step in the body with a full-line comment of the "
        "form '# step: <what this block does>'; these comments are required.\n";
    if (with_actions) {
        prompt +=
            "Available actions:\n"
            "  SearchCode — input: a symbol name; returns its definition from the repo\n"
            "  SearchFile — input: a repo-relative path; returns the file's content\n"
            "  SearchWeb — input: a query; searches the web when enabled\n"
            "  Compiler — input: your full function; inserts it into the repo and runs "
            "the verification suite, returning the captured output\n"
            "Each message must be exactly:\n"
            "Thought: <your reasoning>\n"
            "Action: <action name>\n"
            "Action Input: <input>\n"
            "When the implementation is ready, finish with:\n"
            "Thought: <your reasoning>\n"
            "Final Answer: <the complete function definition, nothing else>";
    } else {
        prompt += "Reply with the complete function definition and nothing else.";
    }
    return prompt;
}

std::string task_prompt(const TaskBundle& bundle, const LiteratureReport& report) {
    std::string out = "Algorithm description (LaTeX):\n" + bundle.algorithm_latex +
                      "\n\nTarget function signature:\n" + bundle.function_signature +
                      "\n\nTarget file: " + bundle.target_file;
    std::string lit = report.to_text();
    if (!lit.empty()) out += "\n\nLiterature report:\n" + lit;
    return out;
}

bool has_marker(const std::string& source) {
    for (const auto& line : split(source, '\n')) {
        std::string t = trim(line);
        if (t.rfind("#", 0) == 0 && trim(t.substr(1)).rfind(kMarkerPrefix, 0) == 0) return true;
    }
    return false;
}

constexpr const char* kMarkerReminder =
    "The function is missing the required reasoning comments. Resend the complete "
    "function with a '# step: ...' comment before each reasoning step.";

}  // namespace

GeneratedCode parse_generated_code(const std::string& final_answer) {
    GeneratedCode code;
    std::string text = final_answer;
    size_t fence = text.find("```");
    if (fence != std::string::npos) {
        size_t line_end = text.find('\n', fence);
        size_t close = line_end == std::string::npos
                           ? std::string::npos
                           : text.find("```", line_end + 1);
        if (line_end != std::string::npos && close != std::string::npos)
            text = text.substr(line_end + 1, close - line_end - 1);
    }
    // normalize trailing whitespace to one newline
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    if (!text.empty()) text += "\n";
    code.source = text;
    for (const auto& line : split(text, '\n')) {
        std::string t = trim(line);
        if (t.rfind("# uses:", 0) == 0)
            for (auto& dep : split(trim(t.substr(7)), ','))
                if (std::string d = trim(dep); !d.empty())
                    code.declared_dependencies.push_back(d);
    }
    return code;
}

CodeAgentResult run_code_agent(const TaskBundle& bundle, const LiteratureReport& report,
                               const Toolbox& toolbox, LlmClient& model, bool single_shot,
                               const StepLimits& limits, const RetryPolicy& retry) {
    CodeAgentResult result;
    result.transcript.agent = "code";

    std::vector<Message> messages = {
        {"system", code_system_prompt(!single_shot)},
        {"user", task_prompt(bundle, report)},
    };

    if (single_shot) {
        // zero actions: the completion itself is the final answer
        std::string answer = llm_complete(model, messages, {}, retry);
        GeneratedCode code = parse_generated_code(answer);
        if (!has_marker(code.source)) {
            messages.push_back({"assistant", answer});
            messages.push_back({"user", kMarkerReminder});
            answer = llm_complete(model, messages, {}, retry);
            code = parse_generated_code(answer);
            if (!has_marker(code.source))
                throw MalformedStep("generated code lacks reasoning markers after reprompt");
        }
        result.code = std::move(code);
        result.transcript.final_text = result.code.source;
        return result;
    }

    StepLimits remaining = limits;
    std::vector<Message>& conversation = messages;
    bool reprompted_for_markers = false;
    while (true) {
        ReactResult loop = run_react_loop(model, conversation, toolbox, code_actions(),
                                          remaining, "code", retry);
        // merge transcripts across marker reprompts
        for (auto& step : loop.transcript.steps) {
            result.transcript.steps.push_back(step);
            ++result.transcript.counters[step.action.name];
        }
        if (!loop.final_answer) {
            result.transcript.budget_exhausted = true;
            return result;  // empty source; downstream classifies it syntax
        }
        GeneratedCode code = parse_generated_code(*loop.final_answer);
        if (has_marker(code.source)) {
            result.code = std::move(code);
            result.transcript.final_text = result.code.source;
            return result;
        }
        if (reprompted_for_markers)
            throw MalformedStep("generated code lacks reasoning markers after reprompt");
        reprompted_for_markers = true;
        conversation.push_back({"assistant", *loop.final_answer});
        conversation.push_back({"user", kMarkerReminder});
        remaining.max_steps = std::max(1, remaining.max_steps -
                                              static_cast<int>(loop.transcript.steps.size()) - 1);
    }
}

} // namespace reprokit
