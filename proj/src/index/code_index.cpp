// SPDX-License-Identifier: Apache-2.0
#include "reprokit/index/code_index.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/py/parser.hpp"
#include "reprokit/util/fs.hpp"
#include "reprokit/util/strings.hpp"

#include <algorithm>

namespace reprokit {

namespace {

using py::AstNode;
using py::NodeKind;

std::string module_name_for(const fs::path& rel) {
    fs::path p = rel;
    p.replace_extension();
    std::string dotted;
    for (const auto& part : p) {
        if (!dotted.empty()) dotted += ".";
        dotted += part.string();
    }
    if (dotted.size() >= 9 && dotted.ends_with("__init__")) {
        dotted.resize(dotted.size() - 9);  // strip ".__init__"
        if (!dotted.empty() && dotted.back() == '.') dotted.pop_back();
    }
    return dotted;
}

std::string slice_lines(const std::vector<std::string>& lines, int first, int last) {
    std::string out;
    for (int i = first; i <= last && i <= static_cast<int>(lines.size()); ++i) {
        out += lines[static_cast<size_t>(i - 1)];
        out += '\n';
    }
    return out;
}

// Resolves a relative "from ...mod import x" against the importing file.
std::string resolve_relative_module(const std::string& spec, const fs::path& rel_file) {
    size_t dots = 0;
    while (dots < spec.size() && spec[dots] == '.') ++dots;
    fs::path base = rel_file.parent_path();
    for (size_t i = 1; i < dots; ++i) base = base.parent_path();
    std::string prefix = module_name_for(base / "__init__.py");
    std::string tail = spec.substr(dots);
    if (prefix.empty()) return tail;
    return tail.empty() ? prefix : prefix + "." + tail;
}

void record_imports(const AstNode& stmt, const std::string& rel_file,
                    std::map<std::string, ImportOrigin>& table,
                    const std::map<std::string, std::string>& module_files) {
    auto repo_lookup = [&](const std::string& module) -> const std::string* {
        auto it = module_files.find(module);
        return it == module_files.end() ? nullptr : &it->second;
    };
    if (stmt.kind == NodeKind::Import) {
        for (const auto& alias : stmt.children) {
            if (alias.kind != NodeKind::ImportAlias) continue;
            const AstNode* as = py::find_child(alias, NodeKind::Alias);
            std::string local =
                as ? as->text : alias.text.substr(0, alias.text.find('.'));
            // `import a.b` binds `a`; resolve the bound name, not the leaf
            std::string module = as ? alias.text : alias.text.substr(0, alias.text.find('.'));
            ImportOrigin origin;
            origin.module = module;
            if (const std::string* file = repo_lookup(module)) {
                origin.external = false;
                origin.repo_file = *file;
            }
            table[local] = origin;
        }
        return;
    }
    if (stmt.kind != NodeKind::ImportFrom) return;
    std::string module = stmt.text;
    if (!module.empty() && module[0] == '.')
        module = resolve_relative_module(module, rel_file);
    for (const auto& alias : stmt.children) {
        if (alias.kind != NodeKind::ImportAlias || alias.text == "*") continue;
        const AstNode* as = py::find_child(alias, NodeKind::Alias);
        std::string local = as ? as->text : alias.text;
        ImportOrigin origin;
        origin.module = module;
        origin.symbol = alias.text;
        if (const std::string* file = repo_lookup(module)) {
            origin.external = false;
            origin.repo_file = *file;
        } else if (const std::string* sub = repo_lookup(module + "." + alias.text)) {
            // from pkg import submodule
            origin.external = false;
            origin.module = module + "." + alias.text;
            origin.symbol.clear();
            origin.repo_file = *sub;
        }
        table[local] = origin;
    }
}

}  // namespace

std::map<std::string, ImportOrigin> build_import_table(
    const py::AstNode& tree, const std::string& rel_file,
    const std::map<std::string, std::string>& module_files) {
    std::map<std::string, ImportOrigin> table;
    py::walk(tree, [&](const AstNode& n) {
        if (n.kind == NodeKind::Import || n.kind == NodeKind::ImportFrom)
            record_imports(n, rel_file, table, module_files);
    });
    return table;
}

CodeIndex index_repository(const fs::path& root) {
    if (!fs::exists(root)) throw IoError("repository root does not exist: " + root.string());
    CodeIndex index;
    index.root = fs::absolute(root).lexically_normal();

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(index.root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".py")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& file : files) {
        std::string rel = fs::relative(file, index.root).generic_string();
        index.module_files[module_name_for(rel)] = rel;
    }

    for (const auto& file : files) {
        std::string rel = fs::relative(file, index.root).generic_string();
        std::string source = read_text_file(file);
        AstNode tree;
        try {
            tree = py::parse_python(source);
        } catch (const ParseError&) {
            index.skipped.push_back(rel);
            continue;
        }
        std::vector<std::string> lines = split(source, '\n');

        auto add_symbol = [&](std::string name, std::string qualified, SymbolKind kind,
                              int first, int last) {
            SymbolDef def{std::move(name), std::move(qualified), rel, kind, first, last,
                          slice_lines(lines, first, last)};
            index.by_file[rel].push_back(def);
            index.by_name[def.name].push_back(def);
            if (def.qualified != def.name) index.by_name[def.qualified].push_back(def);
        };

        index.import_tables[rel] = build_import_table(tree, rel, index.module_files);
        for (const auto& stmt : tree.children) {
            switch (stmt.kind) {
                case NodeKind::FunctionDef:
                case NodeKind::AsyncFunctionDef:
                    add_symbol(stmt.text, stmt.text, SymbolKind::Function, stmt.line,
                               stmt.end_line);
                    break;
                case NodeKind::ClassDef: {
                    add_symbol(stmt.text, stmt.text, SymbolKind::Class, stmt.line,
                               stmt.end_line);
                    if (const AstNode* body = py::find_child(stmt, NodeKind::Body)) {
                        for (const auto& member : body->children) {
                            if (member.kind == NodeKind::FunctionDef ||
                                member.kind == NodeKind::AsyncFunctionDef)
                                add_symbol(member.text, stmt.text + "." + member.text,
                                           SymbolKind::Function, member.line, member.end_line);
                        }
                    }
                    break;
                }
                case NodeKind::Assign:
                    for (size_t i = 0; i + 1 < stmt.children.size(); ++i)
                        if (stmt.children[i].kind == NodeKind::Name)
                            add_symbol(stmt.children[i].text, stmt.children[i].text,
                                       SymbolKind::Global, stmt.line, stmt.end_line);
                    break;
                case NodeKind::AnnAssign:
                    if (stmt.children.size() > 2 && stmt.children[0].kind == NodeKind::Name)
                        add_symbol(stmt.children[0].text, stmt.children[0].text,
                                   SymbolKind::Global, stmt.line, stmt.end_line);
                    break;
                default:
                    break;
            }
        }
    }
    return index;
}

std::vector<SymbolDef> lookup_symbol(const CodeIndex& index, const std::string& name) {
    auto it = index.by_name.find(name);
    if (it == index.by_name.end()) return {};
    return it->second;
}

std::string read_repo_file(const CodeIndex& index, const std::string& rel_path) {
    if (!path_within(index.root, rel_path))
        throw PathEscape("path escapes the repository root: " + rel_path);
    fs::path full = index.root / rel_path;
    if (!fs::exists(full)) throw NotFound("no such file in repository: " + rel_path);
    return read_text_file(full);
}

} // namespace reprokit
