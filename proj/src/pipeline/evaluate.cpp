// SPDX-License-Identifier: Apache-2.0
#include "reprokit/pipeline/evaluate.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/exec/harness.hpp"
#include "reprokit/metrics/dependencies.hpp"
#include "reprokit/llm/mock.hpp"
#include "reprokit/util/fs.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>

namespace reprokit {

const char* agent_mode_name(AgentMode mode) {
    switch (mode) {
        case AgentMode::None: return "none";
        case AgentMode::Paper: return "paper";
        case AgentMode::Code: return "code";
        case AgentMode::Both: return "both";
    }
    return "?";
}

AgentMode agent_mode_from_name(const std::string& name) {
    if (name == "none") return AgentMode::None;
    if (name == "paper") return AgentMode::Paper;
    if (name == "code") return AgentMode::Code;
    if (name == "both") return AgentMode::Both;
    throw SchemaViolation("mode", "expected none|paper|code|both, got " + name);
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

struct ScriptedClients {
    std::unique_ptr<MockLlmClient> agent;
    std::unique_ptr<MockLlmClient> extraction;
};

// Script file: {"tasks": {"<task_id>": {"agent": [...], "extraction": [...]}},
//               "default": {...}}. Entries may be plain strings or
// {"transient": "msg"} / {"error": "msg"} failure injections.
ScriptedClients load_scripted_clients(const fs::path& script_path, const std::string& task_id) {
    nlohmann::json root = nlohmann::json::parse(read_text_file(script_path));
    const nlohmann::json* entry = nullptr;
    if (root.contains("tasks") && root["tasks"].contains(task_id))
        entry = &root["tasks"][task_id];
    else if (root.contains("default"))
        entry = &root["default"];
    if (!entry) throw SchemaViolation("llm_script", "no script for task " + task_id);

    auto build = [](const nlohmann::json& list) {
        auto client = std::make_unique<MockLlmClient>();
        for (const auto& item : list) {
            if (item.is_string()) {
                client->push(item.get<std::string>());
            } else if (item.contains("transient")) {
                client->push(MockLlmClient::Transient{item["transient"].get<std::string>()});
            } else {
                client->push(MockLlmClient::Hard{item.value("error", "scripted failure")});
            }
        }
        return client;
    };
    ScriptedClients clients;
    clients.agent = build(entry->value("agent", nlohmann::json::array()));
    clients.extraction = build(entry->value("extraction", nlohmann::json::array()));
    return clients;
}

std::unique_ptr<NodeMatcher> make_matcher(const RunConfig& config, LlmClient* llm) {
    if (config.matcher == "llm") {
        if (!llm) throw SchemaViolation("matcher", "llm matcher requested but no client wired");
        return std::make_unique<LlmMatcher>(*llm);
    }
    if (config.matcher != "lexical")
        throw SchemaViolation("matcher", "expected lexical|llm, got " + config.matcher);
    return std::make_unique<LexicalMatcher>(config.tau);
}

fs::path generated_path_for(const RunConfig& config, const std::string& task_id) {
    if (auto it = config.generated_files.find(task_id); it != config.generated_files.end())
        return it->second;
    if (!config.generated_dir.empty()) return config.generated_dir / (task_id + ".py");
    throw MissingFile("generated source for task " + task_id);
}

}  // namespace

MetricReport evaluate_task(const RunConfig& config, const TaskBundle& bundle,
                           const std::string& generated, NodeMatcher& matcher) {
    MetricReport report;
    report.task_id = bundle.task_id;
    report.runs_averaged = config.runs;

    ExecutionOutcome outcome =
        stage("execution", [&] { return evaluate_generated(bundle, generated); });
    report.execution_accuracy = outcome.accurate ? 1 : 0;
    report.failure_class = classify_failure(outcome);

    report.codebleu_components =
        stage("codebleu", [&] { return codebleu(generated, bundle.reference_impl); });
    report.codebleu = report.codebleu_components.total;

    CodeIndex index = stage("index", [&] { return index_repository(bundle.repo_dir()); });
    const DependencyAnnotation& annotated = bundle.dependency_annotations;
    try {
        DependencyUsage used = extract_dependencies(generated, bundle, index);
        RecallScores scores = recall(used, annotated);
        report.recall_intra = scores.intra;
        report.recall_cross = scores.cross;
        report.recall_api = scores.api;
    } catch (const ParseError&) {
        // a generation that does not parse earns 0 on every annotated category
        if (!annotated.intra_file.empty()) report.recall_intra = 0.0;
        if (!annotated.cross_file.empty()) report.recall_cross = 0.0;
        if (!annotated.external_api.empty()) report.recall_api = 0.0;
    }

    ReasoningGraph generated_graph;
    try {
        generated_graph = graph_from_source(generated);
    } catch (const Error&) {
        // unparseable or markerless generations score 0
    }
    report.reasoning_graph_accuracy = stage("reasoning-graph", [&] {
        return score_reasoning_accuracy(bundle.reference_graph, generated_graph, matcher,
                                        config.runs);
    });
    return report;
}

namespace {

MetricReport run_one_task(const RunConfig& config, const fs::path& bundle_path,
                          std::optional<AgentTranscript>* paper_out,
                          std::optional<AgentTranscript>* code_out) {
    TaskBundle bundle = load_bundle(bundle_path);

    ScriptedClients scripted;
    std::unique_ptr<HttpLlmClient> http_agent, http_extraction;
    LlmClient* agent_llm = nullptr;
    LlmClient* extraction_llm = nullptr;
    bool need_llm = config.mode != AgentMode::None || config.matcher == "llm";
    if (need_llm) {
        if (config.llm_script) {
            scripted = load_scripted_clients(*config.llm_script, bundle.task_id);
            agent_llm = scripted.agent.get();
            extraction_llm = scripted.extraction.get();
        } else {
            HttpLlmConfig http = http_llm_config_from_env();
            if (http.endpoint.empty())
                throw SchemaViolation("llm",
                                      "agent mode needs REPROKIT_LLM_ENDPOINT or --llm-script");
            http_agent = std::make_unique<HttpLlmClient>(http);
            http_extraction = std::make_unique<HttpLlmClient>(http);
            agent_llm = http_agent.get();
            extraction_llm = http_extraction.get();
        }
    }

    std::string generated;
    std::optional<LiteratureReport> report_for_code;

    if (config.mode == AgentMode::None) {
        generated = read_text_file(generated_path_for(config, bundle.task_id));
    } else {
        PaperContext paper = load_paper_context(bundle.paper_dir());
        DirectoryFetcher fetcher(bundle.paper_dir() / "literature");
        CodeIndex index = index_repository(bundle.repo_dir());
        OfflineSearchBackend offline_web;

        Toolbox toolbox;
        toolbox.paper = &paper;
        toolbox.fetcher = &fetcher;
        toolbox.index = &index;
        toolbox.web = &offline_web;
        toolbox.web_enabled = config.enable_web;
        toolbox.extraction = extraction_llm;
        toolbox.compiler = [&bundle](const std::string& code) {
            ExecutionOutcome outcome = evaluate_generated(bundle, code);
            return outcome.to_json().dump(2) + "\n--- captured output ---\n" +
                   outcome.run_output;
        };

        LiteratureReport literature;
        if (config.mode == AgentMode::Paper || config.mode == AgentMode::Both) {
            PaperAgentResult pr = run_paper_agent(bundle, toolbox, *agent_llm,
                                                  config.paper_limits);
            literature = std::move(pr.report);
            *paper_out = std::move(pr.transcript);
        }
        bool single_shot = config.mode == AgentMode::Paper;  // code actions blocked
        CodeAgentResult cr = run_code_agent(bundle, literature, toolbox, *agent_llm,
                                            single_shot, config.code_limits);
        generated = cr.code.source;
        *code_out = std::move(cr.transcript);
        report_for_code = std::move(literature);
    }

    std::unique_ptr<NodeMatcher> matcher = make_matcher(config, extraction_llm);
    MetricReport metric = evaluate_task(config, bundle, generated, *matcher);

    if (!config.out.empty()) {
        fs::path task_dir = config.out / bundle.task_id;
        write_text_file(task_dir / "report.json", report_to_json(metric).dump(2) + "\n");
        write_text_file(task_dir / "generated.py", generated);
        if (*paper_out)
            write_text_file(task_dir / "paper_transcript.json", (*paper_out)->dump());
        if (*code_out)
            write_text_file(task_dir / "code_transcript.json", (*code_out)->dump());
        if (report_for_code)
            write_text_file(task_dir / "literature_report.json",
                            report_for_code->to_json().dump(2) + "\n");
    }
    return metric;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
    if (config.bundles.empty()) throw EmptyInput("run_pipeline needs at least one bundle");

    PipelineResult result;
    std::vector<std::optional<MetricReport>> slots(config.bundles.size());
    std::vector<std::optional<TaskFailure>> errors(config.bundles.size());

    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= config.bundles.size()) return;
            std::optional<AgentTranscript> paper_t, code_t;
            try {
                slots[i] = run_one_task(config, config.bundles[i], &paper_t, &code_t);
            } catch (const std::exception& e) {
                errors[i] = TaskFailure{config.bundles[i].string(), e.what()};
            }
        }
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i]) result.reports.push_back(*slots[i]);
        if (errors[i]) result.failures.push_back(*errors[i]);
    }
    if (!result.reports.empty()) result.aggregate = aggregate_reports(result.reports);

    if (!config.out.empty() && result.aggregate) {
        nlohmann::ordered_json agg = aggregate_to_json(*result.aggregate);
        agg["failures"] = nlohmann::ordered_json::array();
        for (const auto& f : result.failures)
            agg["failures"].push_back({{"task", f.task_id}, {"error", f.error}});
        write_text_file(config.out / "aggregate.json", agg.dump(2) + "\n");
        write_text_file(config.out / "aggregate.txt", render_table(*result.aggregate));
    }
    return result;
}

} // namespace reprokit
