// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace reprokit {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    bool timed_out = false;
    bool signaled = false;
    std::string out;
    std::string err;
};

// Runs argv as a child process with the given working directory, capturing
// stdout/stderr. The environment is scrubbed down to an allow-list
// (PATH, HOME, LANG, LC_ALL, TMPDIR) plus deterministic Python settings;
// extra_env entries are appended. On timeout the whole process group is
// killed. Throws EnvironmentError when the executable cannot be spawned —
// that is a harness defect, not a candidate failure.
RunResult run_process(const std::vector<std::string>& argv, const fs::path& cwd,
                      int timeout_seconds,
                      const std::vector<std::pair<std::string, std::string>>& extra_env = {});

} // namespace reprokit
