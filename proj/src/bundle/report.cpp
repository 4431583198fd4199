// SPDX-License-Identifier: Apache-2.0
#include "reprokit/bundle/report.hpp"

#include "reprokit/errors.hpp"

#include <cmath>
#include <cstdio>

namespace reprokit {

const char* failure_class_name(FailureClass fc) {
    switch (fc) {
        case FailureClass::None: return "none";
        case FailureClass::Syntax: return "syntax";
        case FailureClass::Runtime: return "runtime";
        case FailureClass::Mismatch: return "mismatch";
        case FailureClass::Timeout: return "timeout";
    }
    return "?";
}

FailureClass failure_class_from_name(const std::string& name) {
    if (name == "none") return FailureClass::None;
    if (name == "syntax") return FailureClass::Syntax;
    if (name == "runtime") return FailureClass::Runtime;
    if (name == "mismatch") return FailureClass::Mismatch;
    if (name == "timeout") return FailureClass::Timeout;
    throw SchemaViolation("failure_class", "unknown value " + name);
}

namespace {

nlohmann::ordered_json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<double> optional_from_json(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

nlohmann::ordered_json report_to_json(const MetricReport& r) {
    nlohmann::ordered_json j;
    j["task_id"] = r.task_id;
    j["execution_accuracy"] = r.execution_accuracy;
    j["failure_class"] = failure_class_name(r.failure_class);
    j["codebleu"] = r.codebleu;
    j["codebleu_components"] = {{"ngram", r.codebleu_components.ngram},
                                {"weighted_ngram", r.codebleu_components.weighted_ngram},
                                {"syntax", r.codebleu_components.syntax},
                                {"dataflow", r.codebleu_components.dataflow}};
    j["reasoning_graph_accuracy"] = r.reasoning_graph_accuracy;
    j["recall_intra"] = optional_to_json(r.recall_intra);
    j["recall_cross"] = optional_to_json(r.recall_cross);
    j["recall_api"] = optional_to_json(r.recall_api);
    j["runs_averaged"] = r.runs_averaged;
    return j;
}

MetricReport report_from_json(const nlohmann::json& j) {
    MetricReport r;
    try {
        r.task_id = j.at("task_id").get<std::string>();
        r.execution_accuracy = j.at("execution_accuracy").get<int>();
        r.failure_class = failure_class_from_name(j.at("failure_class").get<std::string>());
        r.codebleu = j.at("codebleu").get<double>();
        if (j.contains("codebleu_components")) {
            const auto& c = j.at("codebleu_components");
            r.codebleu_components.ngram = c.value("ngram", 0.0);
            r.codebleu_components.weighted_ngram = c.value("weighted_ngram", 0.0);
            r.codebleu_components.syntax = c.value("syntax", 0.0);
            r.codebleu_components.dataflow = c.value("dataflow", 0.0);
            r.codebleu_components.total = r.codebleu;
        }
        r.reasoning_graph_accuracy = j.at("reasoning_graph_accuracy").get<double>();
        r.recall_intra = optional_from_json(j, "recall_intra");
        r.recall_cross = optional_from_json(j, "recall_cross");
        r.recall_api = optional_from_json(j, "recall_api");
        r.runs_averaged = j.value("runs_averaged", 1);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation("metric_report", e.what());
    }
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (r.execution_accuracy != 0 && r.execution_accuracy != 1)
        throw SchemaViolation("execution_accuracy", "must be 0 or 1");
    if (r.execution_accuracy == 1 && r.failure_class != FailureClass::None)
        throw SchemaViolation("failure_class", "accurate tasks must have class none");
    if (!in_unit(r.codebleu) || !in_unit(r.reasoning_graph_accuracy))
        throw SchemaViolation("metric_report", "scores must lie in [0,1]");
    for (const auto& v : {r.recall_intra, r.recall_cross, r.recall_api})
        if (v && !in_unit(*v)) throw SchemaViolation("metric_report", "recall out of [0,1]");
    return r;
}

AggregateReport aggregate_reports(const std::vector<MetricReport>& reports) {
    if (reports.empty()) throw EmptyInput("nothing to aggregate");
    AggregateReport agg;
    agg.tasks = static_cast<int>(reports.size());
    double intra_sum = 0.0, cross_sum = 0.0, api_sum = 0.0;
    for (const char* name : {"none", "syntax", "runtime", "mismatch", "timeout"})
        agg.failure_counts[name] = 0;
    for (const auto& r : reports) {
        agg.exe_acc += r.execution_accuracy;
        agg.codebleu += r.codebleu;
        agg.rg_acc += r.reasoning_graph_accuracy;
        if (r.recall_intra) {
            intra_sum += *r.recall_intra;
            ++agg.recall_intra_n;
        }
        if (r.recall_cross) {
            cross_sum += *r.recall_cross;
            ++agg.recall_cross_n;
        }
        if (r.recall_api) {
            api_sum += *r.recall_api;
            ++agg.recall_api_n;
        }
        ++agg.failure_counts[failure_class_name(r.failure_class)];
    }
    agg.exe_acc /= agg.tasks;
    agg.codebleu /= agg.tasks;
    agg.rg_acc /= agg.tasks;
    if (agg.recall_intra_n) agg.recall_intra = intra_sum / agg.recall_intra_n;
    if (agg.recall_cross_n) agg.recall_cross = cross_sum / agg.recall_cross_n;
    if (agg.recall_api_n) agg.recall_api = api_sum / agg.recall_api_n;
    for (const auto& [name, count] : agg.failure_counts)
        agg.failure_rates[name] = static_cast<double>(count) / agg.tasks;
    return agg;
}

nlohmann::ordered_json aggregate_to_json(const AggregateReport& agg) {
    nlohmann::ordered_json j;
    j["tasks"] = agg.tasks;
    j["Exe Acc"] = agg.exe_acc;
    j["CodeBLEU"] = agg.codebleu;
    j["RG Acc"] = agg.rg_acc;
    j["Intra-File"] = optional_to_json(agg.recall_intra);
    j["Cross-File"] = optional_to_json(agg.recall_cross);
    j["API"] = optional_to_json(agg.recall_api);
    j["recall_task_counts"] = {{"intra", agg.recall_intra_n},
                               {"cross", agg.recall_cross_n},
                               {"api", agg.recall_api_n}};
    j["failure_counts"] = agg.failure_counts;
    j["failure_rates"] = agg.failure_rates;
    return j;
}

std::string render_table(const AggregateReport& agg, const std::string& row_label) {
    auto cell = [](const std::optional<double>& v) {
        char buf[16];
        if (!v) return std::string("     -");
        std::snprintf(buf, sizeof buf, "%6.3f", *v);
        return std::string(buf);
    };
    std::string head = "Approach             | Exe Acc | CodeBLEU | RG Acc | Intra-File | "
                       "Cross-File |    API";
    std::string rule(head.size(), '-');
    char row[256];
    std::snprintf(row, sizeof row, "%-20s |  %s |   %s | %s |     %s |     %s | %s",
                  row_label.c_str(), cell(agg.exe_acc).c_str(), cell(agg.codebleu).c_str(),
                  cell(agg.rg_acc).c_str(), cell(agg.recall_intra).c_str(),
                  cell(agg.recall_cross).c_str(), cell(agg.recall_api).c_str());
    return head + "\n" + rule + "\n" + row + "\n";
}

} // namespace reprokit
