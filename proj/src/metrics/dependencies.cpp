// SPDX-License-Identifier: Apache-2.0
#include "reprokit/metrics/dependencies.hpp"

#include "reprokit/analysis/names.hpp"
#include "reprokit/py/parser.hpp"
#include "reprokit/util/strings.hpp"

#include <algorithm>

namespace reprokit {

namespace {

using py::AstNode;
using py::NodeKind;

// Maximal dotted access chains rooted at a plain name: np.linalg.norm ->
// ["np","linalg","norm"]. Chains interrupted by calls or subscripts split at
// the interruption (the inner pure chain is collected on its own visit).
void collect_chains(const AstNode& node, bool parent_is_attribute,
                    std::vector<std::vector<std::string>>& out) {
    if (node.kind == NodeKind::Attribute && !parent_is_attribute) {
        std::vector<std::string> parts;
        const AstNode* cur = &node;
        while (cur->kind == NodeKind::Attribute) {
            parts.push_back(cur->text);
            cur = &cur->children[0];
        }
        if (cur->kind == NodeKind::Name) {
            parts.push_back(cur->text);
            std::reverse(parts.begin(), parts.end());
            out.push_back(std::move(parts));
            return;  // the chain is consumed whole
        }
        // impure base (call, subscript, literal): recurse normally
    }
    for (const auto& child : node.children)
        collect_chains(child, node.kind == NodeKind::Attribute, out);
}

}  // namespace

DependencyUsage extract_dependencies(const std::string& generated, const TaskBundle& bundle,
                                     const CodeIndex& index) {
    AstNode tree = py::parse_python(generated);  // ParseError propagates

    const std::string target_rel = fs::path(bundle.target_file).generic_string();
    auto gen_imports = build_import_table(tree, target_rel, index.module_files);

    // names bound by the generated code itself (imports excluded: the import
    // table already claims those)
    std::set<std::string> local;
    for (const auto& ev : collect_name_events(tree))
        if (ev.kind != NameEventKind::Use && !gen_imports.count(ev.name)) local.insert(ev.name);

    std::set<std::string> target_symbols;
    if (auto it = index.by_file.find(target_rel); it != index.by_file.end())
        for (const auto& def : it->second) target_symbols.insert(def.qualified);
    const std::map<std::string, ImportOrigin>* target_imports = nullptr;
    if (auto it = index.import_tables.find(target_rel); it != index.import_tables.end())
        target_imports = &it->second;

    // references: every dotted chain plus every bare name read
    std::vector<std::vector<std::string>> refs;
    collect_chains(tree, false, refs);
    for (const auto& ev : collect_name_events(tree))
        if (ev.kind == NameEventKind::Use) refs.push_back({ev.name});

    auto longest_repo_module = [&](const std::string& dotted) -> std::string {
        std::string best;
        for (const auto& [module, file] : index.module_files) {
            if (module.size() <= best.size()) continue;
            if (dotted == module || dotted.rfind(module + ".", 0) == 0) best = module;
        }
        return best;
    };

    DependencyUsage usage;
    for (const auto& parts : refs) {
        const std::string& root = parts.front();
        if (local.count(root)) continue;

        const ImportOrigin* origin = nullptr;
        if (auto it = gen_imports.find(root); it != gen_imports.end()) origin = &it->second;

        if (!origin && target_symbols.count(root)) {
            // longest dotted prefix that names a symbol of the target file
            std::string best;
            std::string acc;
            for (const auto& part : parts) {
                acc = acc.empty() ? part : acc + "." + part;
                if (target_symbols.count(acc)) best = acc;
            }
            usage.intra_file.insert(best);
            continue;
        }
        if (!origin && target_imports) {
            if (auto it = target_imports->find(root); it != target_imports->end())
                origin = &it->second;
        }
        if (!origin) continue;  // unresolvable bare name (builtin, typo)

        std::string full = origin->module;
        if (!origin->symbol.empty()) full += "." + origin->symbol;
        for (size_t i = 1; i < parts.size(); ++i) full += "." + parts[i];

        if (!origin->external) {
            usage.cross_file.insert(full);
        } else if (!longest_repo_module(full).empty()) {
            usage.cross_file.insert(full);  // dotted import of a repo package module
        } else {
            usage.external_api.insert(full);
        }
    }
    return usage;
}

RecallScores recall(const DependencyUsage& used, const DependencyAnnotation& annotated) {
    auto score = [](const std::set<std::string>& ann,
                    const std::set<std::string>& got) -> std::optional<double> {
        if (ann.empty()) return std::nullopt;
        size_t hit = 0;
        for (const auto& name : ann) hit += got.count(name);
        return static_cast<double>(hit) / static_cast<double>(ann.size());
    };
    RecallScores scores;
    scores.intra = score(annotated.intra_file, used.intra_file);
    scores.cross = score(annotated.cross_file, used.cross_file);
    scores.api = score(annotated.external_api, used.external_api);
    return scores;
}

} // namespace reprokit
