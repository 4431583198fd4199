// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/bundle/report.hpp"
#include "reprokit/bundle/task_bundle.hpp"
#include "reprokit/exec/process.hpp"

#include <string>
#include <vector>

namespace reprokit {

struct CaseResult {
    int case_id = 0;
    std::string status;  // "pass" | "fail"
    std::string stderr_excerpt;
};

struct ExecutionOutcome {
    int passed_cases = 0;
    int total_cases = 0;
    bool accurate = false;  // passed == total
    FailureClass failure_class = FailureClass::None;
    std::vector<CaseResult> per_case;
    std::string run_output;  // captured stdout + stderr of run_command

    nlohmann::ordered_json to_json() const;
};

// Fresh copy of the bundle's repository with the region between the
// insertion sentinels of target_file replaced by `generated`; the bundle
// itself is never touched. Throws MarkerError / IoError.
fs::path materialize_workspace(const TaskBundle& bundle, const std::string& generated,
                               const fs::path& scratch_root);

// Runs the bundle's verification suite against a materialized workspace:
// run_command once (workspace as cwd, under the timeout), then
// compare_command per case with (actual_case_dir, expected_case_dir).
// Load-time parse/import failures classify as syntax, other nonzero exits
// as runtime, overruns as timeout, clean runs with unequal outputs as
// mismatch. Throws EnvironmentError only when the harness itself is broken.
ExecutionOutcome run_verification(const fs::path& workspace, const TestEnvSpec& spec,
                                  const fs::path& bundle_root);

// Deterministic projection of an outcome onto its failure class.
FailureClass classify_failure(const ExecutionOutcome& outcome);

// Convenience: materialize into a fresh scratch dir, run, clean up.
ExecutionOutcome evaluate_generated(const TaskBundle& bundle, const std::string& generated);

} // namespace reprokit
