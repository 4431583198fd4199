// SPDX-License-Identifier: Apache-2.0
#include "reprokit/paper/latex.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

#include <array>
#include <cstring>
#include <set>

namespace reprokit {

namespace {

struct Heading {
    const char* command;
    SectionLevel level;
};

// \subsubsection folds into the paragraph level: the tree distinguishes
// three depths, matching the retrieval granularity.
constexpr std::array<Heading, 4> kHeadings = {{
    {"\\section", SectionLevel::Section},
    {"\\subsection", SectionLevel::Subsection},
    {"\\subsubsection", SectionLevel::Paragraph},
    {"\\paragraph", SectionLevel::Paragraph},
}};

// Reads a balanced {...} group starting at `at` (which must point at '{');
// returns one past the closing brace, or npos.
size_t balanced_group(const std::string& text, size_t at, std::string* content) {
    if (at >= text.size() || text[at] != '{') return std::string::npos;
    int depth = 0;
    for (size_t i = at; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) {
            ++i;
            continue;
        }
        if (text[i] == '{') ++depth;
        if (text[i] == '}') {
            --depth;
            if (depth == 0) {
                if (content) *content = text.substr(at + 1, i - at - 1);
                return i + 1;
            }
        }
    }
    return std::string::npos;
}

bool command_name_ends_at(const std::string& text, size_t cmd_begin, size_t name_end) {
    // reject "\\sectionfoo"; allow '*', whitespace or '{' after the name
    (void)cmd_begin;
    if (name_end >= text.size()) return false;
    char c = text[name_end];
    return c == '{' || c == '*' || c == ' ' || c == '\t' || c == '\n' || c == '[';
}

}  // namespace

std::string SectionTree::preamble() const {
    if (nodes.empty()) return source;
    return source.substr(0, nodes.front().heading_begin);
}

std::string SectionTree::own_body(size_t i) const {
    size_t begin = nodes[i].heading_end;
    size_t end = (i + 1 < nodes.size()) ? nodes[i + 1].heading_begin : source.size();
    return source.substr(begin, end - begin);
}

std::string SectionTree::region(size_t i) const {
    size_t begin = nodes[i].heading_end;
    size_t end = source.size();
    for (size_t j = i + 1; j < nodes.size(); ++j) {
        if (nodes[j].level <= nodes[i].level) {
            end = nodes[j].heading_begin;
            break;
        }
    }
    return source.substr(begin, end - begin);
}

bool SectionTree::has_label(const std::string& label) const {
    for (const auto& n : nodes)
        if (n.label == label) return true;
    return false;
}

SectionTree parse_latex(const std::string& source) {
    SectionTree tree;
    tree.source = source;

    size_t at = 0;
    while ((at = source.find('\\', at)) != std::string::npos) {
        const Heading* matched = nullptr;
        size_t name_len = 0;
        for (const auto& h : kHeadings) {
            size_t len = std::strlen(h.command);
            if (source.compare(at, len, h.command) == 0 &&
                command_name_ends_at(source, at, at + len)) {
                // prefer the longest command name (\subsection over \section)
                if (!matched || len > name_len) {
                    matched = &h;
                    name_len = len;
                }
            }
        }
        if (!matched) {
            ++at;
            continue;
        }
        size_t after_name = at + name_len;
        if (after_name < source.size() && source[after_name] == '*') ++after_name;
        // skip an optional [...] argument
        if (after_name < source.size() && source[after_name] == '[') {
            size_t close = source.find(']', after_name);
            if (close != std::string::npos) after_name = close + 1;
        }
        std::string title;
        size_t end = balanced_group(source, after_name, &title);
        if (end == std::string::npos) {  // malformed heading: skip it
            ++at;
            continue;
        }
        SectionNode node;
        node.level = matched->level;
        node.title = trim(title);
        node.heading_begin = at;
        node.heading_end = end;
        tree.nodes.push_back(std::move(node));
        at = end;
    }

    // labels: a \label{...} at the very start of the body names the node
    std::set<std::string> used;
    std::vector<int> counters{0, 0, 0};
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        SectionNode& node = tree.nodes[i];
        int depth = static_cast<int>(node.level);
        counters[static_cast<size_t>(depth - 1)]++;
        for (size_t d = static_cast<size_t>(depth); d < 3; ++d) counters[d] = 0;

        std::string body = tree.own_body(i);
        size_t cursor = body.find_first_not_of(" \t\r\n");
        std::string label;
        if (cursor != std::string::npos && body.compare(cursor, 7, "\\label{") == 0) {
            balanced_group(body, cursor + 6, &label);
            label = trim(label);
        }
        if (label.empty()) {
            const char* names[] = {"section", "subsection", "paragraph"};
            label = names[depth - 1];
            label += "-" + std::to_string(counters[0]);
            if (depth >= 2) label += "." + std::to_string(counters[1]);
            if (depth >= 3) label += "." + std::to_string(counters[2]);
        }
        std::string unique = label;
        for (int suffix = 2; used.count(unique); ++suffix)
            unique = label + "-" + std::to_string(suffix);
        used.insert(unique);
        node.label = unique;
    }
    return tree;
}

std::string get_section(const SectionTree& tree, const std::string& label) {
    for (size_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].label == label) return tree.region(i);
    throw NotFound("no section labeled '" + label + "'");
}

std::vector<SectionUnit> extraction_units(const SectionTree& tree) {
    std::vector<SectionUnit> units;
    if (tree.nodes.empty()) {
        if (!trim(tree.source).empty()) units.push_back({"document", tree.source});
        return units;
    }
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const SectionNode& node = tree.nodes[i];
        if (node.level == SectionLevel::Section) {
            bool has_subsection = false;
            for (size_t j = i + 1; j < tree.nodes.size(); ++j) {
                if (tree.nodes[j].level <= SectionLevel::Section) break;
                if (tree.nodes[j].level == SectionLevel::Subsection) {
                    has_subsection = true;
                    break;
                }
            }
            if (!has_subsection) units.push_back({node.label, tree.region(i)});
        } else if (node.level == SectionLevel::Subsection) {
            units.push_back({node.label, tree.region(i)});
        }
    }
    return units;
}

} // namespace reprokit
