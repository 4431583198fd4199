// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace reprokit {

namespace fs = std::filesystem;

enum class SymbolKind { Class, Function, Global };

struct SymbolDef {
    std::string name;       // "method"
    std::string qualified;  // "Klass.method" (same as name at top level)
    std::string file;       // repo-relative path
    SymbolKind kind = SymbolKind::Function;
    int first_line = 0;
    int last_line = 0;
    std::string text;  // definition source slice

    bool operator==(const SymbolDef&) const = default;
};

// Where a local alias in a file's import table points.
struct ImportOrigin {
    bool external = true;
    std::string module;     // dotted module name ("numpy", "pkg.utils")
    std::string repo_file;  // repo-relative path when !external
    std::string symbol;     // leaf symbol for from-imports, else ""

    bool operator==(const ImportOrigin&) const = default;
};

struct CodeIndex {
    fs::path root;
    // keyed by both plain and qualified name
    std::map<std::string, std::vector<SymbolDef>> by_name;
    std::map<std::string, std::vector<SymbolDef>> by_file;  // in line order
    std::map<std::string, std::map<std::string, ImportOrigin>> import_tables;
    std::map<std::string, std::string> module_files;  // dotted module -> repo file
    std::vector<std::string> skipped;  // unparseable files, repo-relative

    bool operator==(const CodeIndex&) const = default;
};

// Walks root for .py files; top-level classes, functions, methods
// (Class.method) and globals are indexed. Unparseable files land in
// `skipped`, never abort the build.
CodeIndex index_repository(const fs::path& root);

// Every definition whose name or qualified name equals the query.
std::vector<SymbolDef> lookup_symbol(const CodeIndex& index, const std::string& name);

// Exact file bytes; NotFound for absent paths, PathEscape for paths that
// resolve outside the indexed root.
std::string read_repo_file(const CodeIndex& index, const std::string& rel_path);

} // namespace reprokit

namespace reprokit::py {
struct AstNode;
}

namespace reprokit {

// Import table for a parsed file: local alias -> origin. Walks the whole
// tree, so imports nested inside functions are seen too. `rel_file` anchors
// relative imports; `module_files` maps repo module names to files.
std::map<std::string, ImportOrigin> build_import_table(
    const py::AstNode& tree, const std::string& rel_file,
    const std::map<std::string, std::string>& module_files);

} // namespace reprokit
