// SPDX-License-Identifier: Apache-2.0
#include "reprokit/bundle/task_bundle.hpp"

#include "reprokit/analysis/segments.hpp"
#include "reprokit/errors.hpp"
#include "reprokit/util/fs.hpp"
#include "reprokit/util/strings.hpp"

#include <json.hpp>

#include <set>

namespace reprokit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string>& missing_info_categories() {
    static const std::set<std::string> cats = {
        "hyperparameters", "numerical_stability", "implementation_logic",
        "coding_strategy", "mismatch",
    };
    return cats;
}

// Reports the first missing component so a bundle lacking tests/ is
// diagnosed as MissingFile("tests"), not its deepest child.
void require_path(const fs::path& root, const std::string& rel, const char* field) {
    if (rel.empty()) throw SchemaViolation(field, "path must be non-empty");
    fs::path cur = root;
    fs::path acc;
    for (const auto& part : fs::path(rel)) {
        cur /= part;
        acc /= part;
        if (!fs::exists(cur)) throw MissingFile(acc.generic_string());
    }
}

template <typename T>
T get_field(const json& j, const char* field) {
    if (!j.contains(field)) throw SchemaViolation(field, "absent");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        throw SchemaViolation(field, "wrong type");
    }
}

std::vector<std::string> get_argv(const json& j, const char* field) {
    auto argv = get_field<std::vector<std::string>>(j, field);
    if (argv.empty()) throw SchemaViolation(field, "command must be non-empty");
    return argv;
}

// Each marker line must occur exactly once (compared trimmed), begin first.
void check_markers(const std::string& target_text, const InsertionMarker& marker) {
    if (trim(marker.begin).empty() || trim(marker.end).empty())
        throw MarkerError("insertion markers must be non-empty");
    int begin_count = 0, end_count = 0, begin_line = -1, end_line = -1;
    std::vector<std::string> lines = split(target_text, '\n');
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string t = trim(lines[i]);
        if (t == trim(marker.begin)) {
            ++begin_count;
            begin_line = static_cast<int>(i);
        }
        if (t == trim(marker.end)) {
            ++end_count;
            end_line = static_cast<int>(i);
        }
    }
    if (begin_count != 1)
        throw MarkerError("begin marker occurs " + std::to_string(begin_count) +
                          " times (expected exactly once)");
    if (end_count != 1)
        throw MarkerError("end marker occurs " + std::to_string(end_count) +
                          " times (expected exactly once)");
    if (begin_line >= end_line) throw MarkerError("begin marker must precede end marker");
}

}  // namespace

TaskBundle load_bundle(const fs::path& root) {
    if (!fs::exists(root)) throw MissingFile(root.string());
    fs::path manifest_path = root / kManifestName;
    if (!fs::exists(manifest_path)) throw MissingFile(kManifestName);

    json manifest;
    try {
        manifest = json::parse(read_text_file(manifest_path));
    } catch (const json::exception& e) {
        throw SchemaViolation(kManifestName, e.what());
    }

    TaskBundle b;
    b.root = fs::absolute(root).lexically_normal();
    b.task_id = get_field<std::string>(manifest, "task_id");
    if (b.task_id.empty()) throw SchemaViolation("task_id", "must be non-empty");
    b.task_category = get_field<std::string>(manifest, "task_category");
    b.function_signature = get_field<std::string>(manifest, "function_signature");
    b.algorithm_latex = get_field<std::string>(manifest, "algorithm_latex");
    b.paper_context = get_field<std::string>(manifest, "paper_context");
    b.repo_root = get_field<std::string>(manifest, "repo_root");
    b.target_file = get_field<std::string>(manifest, "target_file");

    if (!manifest.contains("insertion_marker")) throw SchemaViolation("insertion_marker", "absent");
    b.insertion_marker.begin = get_field<std::string>(manifest["insertion_marker"], "begin");
    b.insertion_marker.end = get_field<std::string>(manifest["insertion_marker"], "end");

    b.reference_impl_path = get_field<std::string>(manifest, "reference_impl");
    std::string deps_path = get_field<std::string>(manifest, "dependency_annotations");
    std::string graph_path = get_field<std::string>(manifest, "reference_graph");

    if (!manifest.contains("test_env")) throw SchemaViolation("test_env", "absent");
    const json& env = manifest["test_env"];
    b.test_env.run_command = get_argv(env, "run_command");
    b.test_env.compare_command = get_argv(env, "compare_command");
    b.test_env.case_count = get_field<int>(env, "case_count");
    if (b.test_env.case_count < 1) throw SchemaViolation("case_count", "must be >= 1");
    b.test_env.timeout_seconds = get_field<int>(env, "timeout_seconds");
    if (b.test_env.timeout_seconds <= 0) throw SchemaViolation("timeout_seconds", "must be > 0");
    b.test_env.expected_dir = get_field<std::string>(env, "expected_dir");

    if (manifest.contains("missing_info")) {
        for (const auto& item : manifest["missing_info"]) {
            MissingInfo info;
            info.category = get_field<std::string>(item, "category");
            info.text = get_field<std::string>(item, "text");
            if (!missing_info_categories().count(info.category))
                throw SchemaViolation("missing_info", "unknown category " + info.category);
            b.missing_info.push_back(std::move(info));
        }
    }

    require_path(b.root, b.repo_root, "repo_root");
    require_path(b.root, b.paper_context, "paper_context");
    require_path(b.root, b.repo_root + "/" + b.target_file, "target_file");
    require_path(b.root, b.reference_impl_path, "reference_impl");
    require_path(b.root, deps_path, "dependency_annotations");
    require_path(b.root, graph_path, "reference_graph");
    require_path(b.root, b.test_env.expected_dir, "expected_dir");

    check_markers(read_text_file(b.target_path()), b.insertion_marker);

    b.reference_impl = read_text_file(b.root / b.reference_impl_path);
    try {
        extract_segments(b.reference_impl);  // must parse and carry >= 1 marker
    } catch (const Error& e) {
        throw SchemaViolation("reference_impl", e.what());
    }

    json deps;
    try {
        deps = json::parse(read_text_file(b.root / deps_path));
        b.dependency_annotations.intra_file =
            deps.value("intra_file", std::set<std::string>{});
        b.dependency_annotations.cross_file =
            deps.value("cross_file", std::set<std::string>{});
        b.dependency_annotations.external_api =
            deps.value("external_api", std::set<std::string>{});
    } catch (const json::exception& e) {
        throw SchemaViolation("dependency_annotations", e.what());
    }
    auto disjoint = [](const std::set<std::string>& x, const std::set<std::string>& y) {
        for (const auto& v : x)
            if (y.count(v)) return false;
        return true;
    };
    const auto& da = b.dependency_annotations;
    if (!disjoint(da.intra_file, da.cross_file) || !disjoint(da.intra_file, da.external_api) ||
        !disjoint(da.cross_file, da.external_api))
        throw SchemaViolation("dependency_annotations", "categories must be pairwise disjoint");
    for (const auto& s : {&da.intra_file, &da.cross_file, &da.external_api})
        for (const auto& name : *s)
            if (name.empty())
                throw SchemaViolation("dependency_annotations", "names must be non-empty");

    try {
        b.reference_graph = graph_from_json(json::parse(read_text_file(b.root / graph_path)));
    } catch (const json::exception& e) {
        throw SchemaViolation("reference_graph", e.what());
    }

    return b;
}

void write_bundle(const TaskBundle& bundle, const fs::path& root) {
    fs::create_directories(root);

    ordered_json manifest;
    manifest["task_id"] = bundle.task_id;
    manifest["task_category"] = bundle.task_category;
    manifest["function_signature"] = bundle.function_signature;
    manifest["algorithm_latex"] = bundle.algorithm_latex;
    manifest["paper_context"] = bundle.paper_context;
    manifest["repo_root"] = bundle.repo_root;
    manifest["target_file"] = bundle.target_file;
    manifest["insertion_marker"] = {{"begin", bundle.insertion_marker.begin},
                                    {"end", bundle.insertion_marker.end}};
    manifest["reference_impl"] = bundle.reference_impl_path;
    manifest["dependency_annotations"] = "annotations/dependencies.json";
    manifest["reference_graph"] = "annotations/reasoning_graph.json";
    manifest["test_env"] = {{"run_command", bundle.test_env.run_command},
                            {"compare_command", bundle.test_env.compare_command},
                            {"case_count", bundle.test_env.case_count},
                            {"timeout_seconds", bundle.test_env.timeout_seconds},
                            {"expected_dir", bundle.test_env.expected_dir}};
    manifest["missing_info"] = ordered_json::array();
    for (const auto& info : bundle.missing_info)
        manifest["missing_info"].push_back({{"category", info.category}, {"text", info.text}});
    write_text_file(root / kManifestName, manifest.dump(2) + "\n");

    write_text_file(root / bundle.reference_impl_path, bundle.reference_impl);

    ordered_json deps;
    deps["intra_file"] = bundle.dependency_annotations.intra_file;
    deps["cross_file"] = bundle.dependency_annotations.cross_file;
    deps["external_api"] = bundle.dependency_annotations.external_api;
    write_text_file(root / "annotations/dependencies.json", deps.dump(2) + "\n");
    write_text_file(root / "annotations/reasoning_graph.json",
                    graph_to_json(bundle.reference_graph).dump(2) + "\n");

    // auxiliary trees travel verbatim from the source bundle
    auto copy_dir = [&](const std::string& rel) {
        fs::path from = bundle.root / rel;
        fs::path to = root / rel;
        if (fs::exists(from) && !fs::exists(to)) copy_tree(from, to);
    };
    copy_dir(bundle.repo_root);
    copy_dir(bundle.paper_context);
    copy_dir(fs::path(bundle.test_env.expected_dir).begin()->string());
}

bool operator==(const TaskBundle& a, const TaskBundle& b) {
    return a.task_id == b.task_id && a.task_category == b.task_category &&
           a.function_signature == b.function_signature &&
           a.algorithm_latex == b.algorithm_latex && a.paper_context == b.paper_context &&
           a.repo_root == b.repo_root && a.target_file == b.target_file &&
           a.insertion_marker == b.insertion_marker &&
           a.reference_impl_path == b.reference_impl_path &&
           a.reference_impl == b.reference_impl &&
           a.dependency_annotations == b.dependency_annotations &&
           a.reference_graph == b.reference_graph && a.test_env == b.test_env &&
           a.missing_info == b.missing_info;
}

} // namespace reprokit
