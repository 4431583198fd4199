// SPDX-License-Identifier: Apache-2.0
#include "reprokit/exec/harness.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/fs.hpp"
#include "reprokit/util/strings.hpp"

namespace reprokit {

namespace {

// "{bundle}" and "{workspace}" in command argv expand to absolute paths.
std::string expand_placeholders(const std::string& arg, const fs::path& bundle_root,
                                const fs::path& workspace) {
    std::string out = arg;
    auto replace_all = [&](const std::string& from, const std::string& to) {
        size_t at = 0;
        while ((at = out.find(from, at)) != std::string::npos) {
            out.replace(at, from.size(), to);
            at += to.size();
        }
    };
    replace_all("{bundle}", bundle_root.string());
    replace_all("{workspace}", workspace.string());
    return out;
}

std::vector<std::string> expand_argv(const std::vector<std::string>& argv,
                                     const fs::path& bundle_root, const fs::path& workspace) {
    std::vector<std::string> out;
    out.reserve(argv.size());
    for (const auto& a : argv) out.push_back(expand_placeholders(a, bundle_root, workspace));
    return out;
}

bool looks_like_load_failure(const std::string& stderr_text) {
    for (const char* needle : {"SyntaxError", "IndentationError", "TabError",
                               "ModuleNotFoundError", "ImportError"})
        if (stderr_text.find(needle) != std::string::npos) return true;
    return false;
}

std::string excerpt(const std::string& text, size_t limit = 400) {
    if (text.size() <= limit) return text;
    return text.substr(0, limit) + "...";
}

}  // namespace

nlohmann::ordered_json ExecutionOutcome::to_json() const {
    nlohmann::ordered_json j;
    j["passed_cases"] = passed_cases;
    j["total_cases"] = total_cases;
    j["accurate"] = accurate;
    j["failure_class"] = failure_class_name(failure_class);
    j["per_case"] = nlohmann::ordered_json::array();
    for (const auto& c : per_case)
        j["per_case"].push_back({{"case_id", c.case_id},
                                 {"status", c.status},
                                 {"stderr", c.stderr_excerpt}});
    return j;
}

fs::path materialize_workspace(const TaskBundle& bundle, const std::string& generated,
                               const fs::path& scratch_root) {
    std::string original = read_text_file(bundle.target_path());
    std::vector<std::string> lines = split(original, '\n');
    int begin_line = -1, end_line = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string t = trim(lines[i]);
        if (t == trim(bundle.insertion_marker.begin)) {
            if (begin_line >= 0) throw MarkerError("begin marker duplicated in target file");
            begin_line = static_cast<int>(i);
        } else if (t == trim(bundle.insertion_marker.end)) {
            if (end_line >= 0) throw MarkerError("end marker duplicated in target file");
            end_line = static_cast<int>(i);
        }
    }
    if (begin_line < 0) throw MarkerError("begin marker absent from target file");
    if (end_line < 0) throw MarkerError("end marker absent from target file");
    if (begin_line >= end_line) throw MarkerError("begin marker must precede end marker");

    fs::path workspace = scratch_root / ("ws-" + bundle.task_id);
    if (fs::exists(workspace)) throw IoError("workspace already exists: " + workspace.string());
    copy_tree(bundle.repo_dir(), workspace);

    std::string body = generated;
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    std::string rebuilt;
    for (int i = 0; i <= begin_line; ++i) {
        rebuilt += lines[static_cast<size_t>(i)];
        rebuilt += '\n';
    }
    rebuilt += body;
    rebuilt += '\n';
    for (size_t i = static_cast<size_t>(end_line); i < lines.size(); ++i) {
        rebuilt += lines[i];
        if (i + 1 < lines.size()) rebuilt += '\n';
    }
    write_text_file(workspace / bundle.target_file, rebuilt);
    return workspace;
}

ExecutionOutcome run_verification(const fs::path& workspace, const TestEnvSpec& spec,
                                  const fs::path& bundle_root) {
    ExecutionOutcome outcome;
    outcome.total_cases = spec.case_count;

    RunResult run = run_process(expand_argv(spec.run_command, bundle_root, workspace),
                                workspace, spec.timeout_seconds);
    outcome.run_output = run.out + run.err;

    if (run.timed_out) {
        outcome.failure_class = FailureClass::Timeout;
        return outcome;
    }
    if (run.exit_code != 0) {
        outcome.failure_class = looks_like_load_failure(run.err) ? FailureClass::Syntax
                                                                 : FailureClass::Runtime;
        return outcome;
    }

    fs::path expected_root = bundle_root / spec.expected_dir;
    for (int case_id = 1; case_id <= spec.case_count; ++case_id) {
        std::string case_name = "case_" + std::to_string(case_id);
        std::vector<std::string> argv =
            expand_argv(spec.compare_command, bundle_root, workspace);
        argv.push_back((workspace / "output" / case_name).string());
        argv.push_back((expected_root / case_name).string());
        RunResult cmp = run_process(argv, workspace, spec.timeout_seconds);
        CaseResult cr;
        cr.case_id = case_id;
        if (cmp.timed_out) {
            cr.status = "fail";
            cr.stderr_excerpt = "comparison timed out";
        } else if (cmp.exit_code == 0) {
            cr.status = "pass";
            ++outcome.passed_cases;
        } else {
            cr.status = "fail";
            cr.stderr_excerpt = excerpt(trim(cmp.err.empty() ? cmp.out : cmp.err));
        }
        outcome.per_case.push_back(std::move(cr));
    }

    outcome.accurate = outcome.passed_cases == outcome.total_cases;
    outcome.failure_class = outcome.accurate ? FailureClass::None : FailureClass::Mismatch;
    return outcome;
}

FailureClass classify_failure(const ExecutionOutcome& outcome) {
    return outcome.failure_class;
}

ExecutionOutcome evaluate_generated(const TaskBundle& bundle, const std::string& generated) {
    TempDir scratch("reprokit-exec");
    fs::path workspace = materialize_workspace(bundle, generated, scratch.path());
    return run_verification(workspace, bundle.test_env, bundle.root);
}

} // namespace reprokit
