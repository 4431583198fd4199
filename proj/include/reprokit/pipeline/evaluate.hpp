// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/agent/code_agent.hpp"
#include "reprokit/agent/paper_agent.hpp"
#include "reprokit/bundle/report.hpp"
#include "reprokit/bundle/task_bundle.hpp"
#include "reprokit/graph/matching.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reprokit {

enum class AgentMode { None, Paper, Code, Both };

const char* agent_mode_name(AgentMode mode);
AgentMode agent_mode_from_name(const std::string& name);

struct RunConfig {
    std::vector<fs::path> bundles;
    AgentMode mode = AgentMode::None;
    std::string matcher = "lexical";  // "lexical" | "llm"
    double tau = 0.5;
    int runs = 3;
    int jobs = 1;
    bool enable_web = false;
    fs::path out;                                      // reports/transcripts land here
    std::map<std::string, fs::path> generated_files;   // task_id -> source file
    fs::path generated_dir;                            // fallback <dir>/<task_id>.py
    std::optional<fs::path> llm_script;                // scripted mock backend
    StepLimits paper_limits{.max_steps = 20};
    StepLimits code_limits{.max_steps = 40};
};

// One task end to end: execution accuracy, CodeBLEU, dependency recall and
// reasoning-graph accuracy assembled into a MetricReport. Errors from each
// stage carry the stage name.
MetricReport evaluate_task(const RunConfig& config, const TaskBundle& bundle,
                           const std::string& generated, NodeMatcher& matcher);

struct TaskFailure {
    std::string task_id;  // bundle path when the id never loaded
    std::string error;
};

struct PipelineResult {
    std::vector<MetricReport> reports;   // bundle order
    std::vector<TaskFailure> failures;
    std::optional<AggregateReport> aggregate;  // absent when nothing succeeded
};

// Per bundle: optional agent run (per config.mode), then evaluation.
// Per-task failures are recorded and the pipeline continues. With identical
// inputs and scripted backends the outputs are byte-identical, and jobs > 1
// changes nothing but wall-clock time.
PipelineResult run_pipeline(const RunConfig& config);

} // namespace reprokit
