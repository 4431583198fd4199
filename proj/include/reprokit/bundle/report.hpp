// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/metrics/codebleu.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reprokit {

enum class FailureClass { None, Syntax, Runtime, Mismatch, Timeout };

const char* failure_class_name(FailureClass fc);
FailureClass failure_class_from_name(const std::string& name);

struct MetricReport {
    std::string task_id;
    int execution_accuracy = 0;  // 1 iff every verification case matched
    FailureClass failure_class = FailureClass::Syntax;
    double codebleu = 0.0;
    CodeBleuBreakdown codebleu_components;
    double reasoning_graph_accuracy = 0.0;
    std::optional<double> recall_intra;
    std::optional<double> recall_cross;
    std::optional<double> recall_api;
    int runs_averaged = 1;
};

nlohmann::ordered_json report_to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

// Macro-means over tasks; recall means cover only tasks where the category
// is present. Keys mirror the six result-table columns.
struct AggregateReport {
    int tasks = 0;
    double exe_acc = 0.0;
    double codebleu = 0.0;
    double rg_acc = 0.0;
    std::optional<double> recall_intra;
    std::optional<double> recall_cross;
    std::optional<double> recall_api;
    int recall_intra_n = 0;
    int recall_cross_n = 0;
    int recall_api_n = 0;
    std::map<std::string, int> failure_counts;
    std::map<std::string, double> failure_rates;
};

// Throws EmptyInput on an empty list.
AggregateReport aggregate_reports(const std::vector<MetricReport>& reports);

nlohmann::ordered_json aggregate_to_json(const AggregateReport& agg);

// Fixed-width table with the six metric columns.
std::string render_table(const AggregateReport& agg, const std::string& row_label = "all tasks");

} // namespace reprokit
