// SPDX-License-Identifier: Apache-2.0
#include "reprokit/analysis/segments.hpp"

#include "reprokit/analysis/names.hpp"
#include "reprokit/errors.hpp"
#include "reprokit/py/parser.hpp"
#include "reprokit/util/strings.hpp"

namespace reprokit {

namespace {

using py::AstNode;
using py::NodeKind;

void collect_functions(const AstNode& node, std::vector<const AstNode*>& out) {
    py::walk(node, [&](const AstNode& n) {
        if (n.kind == NodeKind::FunctionDef || n.kind == NodeKind::AsyncFunctionDef)
            out.push_back(&n);
    });
}

}  // namespace

std::vector<Segment> extract_segments(const std::string& source,
                                      std::string_view marker_prefix) {
    AstNode tree = py::parse_python(source);
    py::LexResult lex = py::lex_python(source);

    struct Marker {
        int line;
        std::string payload;
    };
    std::vector<Marker> markers;
    for (const auto& comment : lex.comments) {
        if (!comment.own_line) continue;
        std::string text = trim(comment.text);
        if (text.rfind(marker_prefix, 0) != 0) continue;
        markers.push_back({comment.line, trim(text.substr(marker_prefix.size()))});
    }
    if (markers.empty())
        throw MissingAnnotations("no reasoning markers (expected full-line comments "
                                 "starting with '" + std::string(marker_prefix) + "')");

    std::vector<const AstNode*> functions;
    collect_functions(tree, functions);
    const AstNode* target = nullptr;
    for (const AstNode* fn : functions) {
        if (markers.front().line < fn->line || markers.front().line > fn->end_line) continue;
        if (!target || fn->line > target->line) target = fn;  // innermost wins
    }
    if (!target)
        throw MissingAnnotations("reasoning markers must sit inside a function body");

    std::vector<Marker> inside;
    for (const auto& m : markers)
        if (m.line > target->line && m.line <= target->end_line) inside.push_back(m);
    if (inside.empty())
        throw MissingAnnotations("reasoning markers must sit inside a function body");

    std::vector<Segment> segments(inside.size());
    for (size_t i = 0; i < inside.size(); ++i) {
        Segment& seg = segments[i];
        seg.index = static_cast<int>(i);
        seg.comment = inside[i].payload.empty()
                          ? "step " + std::to_string(i + 1)
                          : inside[i].payload;
        seg.first_line = inside[i].line + 1;
        seg.last_line = (i + 1 < inside.size()) ? inside[i + 1].line - 1 : target->end_line;
    }

    for (const auto& event : collect_name_events(*target)) {
        for (auto& seg : segments) {
            if (event.line < seg.first_line || event.line > seg.last_line) continue;
            if (event.kind == NameEventKind::Use)
                seg.uses.insert(event.name);
            else
                seg.defs.insert(event.name);
            break;
        }
    }
    for (auto& seg : segments)
        seg.counts = detail::span_counts(*target, lex.tokens, seg.first_line, seg.last_line);

    return segments;
}

} // namespace reprokit
