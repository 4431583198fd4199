// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/graph/reasoning_graph.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace reprokit {

namespace fs = std::filesystem;

// The three annotation sets are pairwise disjoint; names are non-empty.
struct DependencyAnnotation {
    std::set<std::string> intra_file;
    std::set<std::string> cross_file;
    std::set<std::string> external_api;

    bool operator==(const DependencyAnnotation&) const = default;
};

// Commands may reference the bundle and the materialized workspace through
// the {bundle} and {workspace} placeholders; they run with the workspace as
// working directory.
struct TestEnvSpec {
    std::vector<std::string> run_command;
    std::vector<std::string> compare_command;  // invoked per case with (actual, expected) dirs
    int case_count = 0;
    int timeout_seconds = 600;
    std::string expected_dir;  // bundle-relative; holds case_<n>/ subdirectories

    bool operator==(const TestEnvSpec&) const = default;
};

struct MissingInfo {
    std::string category;  // hyperparameters | numerical_stability |
                           // implementation_logic | coding_strategy | mismatch
    std::string text;

    bool operator==(const MissingInfo&) const = default;
};

struct InsertionMarker {
    std::string begin;
    std::string end;

    bool operator==(const InsertionMarker&) const = default;
};

// One reproduction task, immutable after load and safe to share across
// concurrent evaluations.
struct TaskBundle {
    fs::path root;

    std::string task_id;
    std::string task_category;
    std::string function_signature;
    std::string algorithm_latex;
    std::string paper_context;  // bundle-relative directory
    std::string repo_root;      // bundle-relative directory
    std::string target_file;    // repo-relative path
    InsertionMarker insertion_marker;
    std::string reference_impl_path;  // bundle-relative
    std::string reference_impl;       // loaded source text
    DependencyAnnotation dependency_annotations;
    ReasoningGraph reference_graph;
    TestEnvSpec test_env;
    std::vector<MissingInfo> missing_info;

    fs::path repo_dir() const { return root / repo_root; }
    fs::path paper_dir() const { return root / paper_context; }
    fs::path target_path() const { return repo_dir() / target_file; }
};

// Reads <root>/task.json plus the referenced files, checks every invariant
// (markers unique, reference parses and carries markers, referenced paths
// exist). Throws MissingFile / SchemaViolation / MarkerError.
TaskBundle load_bundle(const fs::path& root);

// Inverse of load_bundle for valid bundles: writes the manifest and the
// referenced files under a new root.
void write_bundle(const TaskBundle& bundle, const fs::path& root);

bool operator==(const TaskBundle& a, const TaskBundle& b);

inline const char* kManifestName = "task.json";

} // namespace reprokit
