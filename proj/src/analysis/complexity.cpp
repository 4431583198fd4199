// SPDX-License-Identifier: Apache-2.0
#include "reprokit/analysis/complexity.hpp"

#include "reprokit/analysis/names.hpp"
#include "reprokit/py/parser.hpp"

#include <set>

namespace reprokit {

namespace {

bool arith_binop(const std::string& op) {
    return op == "+" || op == "-" || op == "*" || op == "/" || op == "//" ||
           op == "%" || op == "**" || op == "@";
}

bool arith_augop(const std::string& op) {
    return op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "//=" ||
           op == "%=" || op == "**=" || op == "@=";
}

}  // namespace

namespace detail {

ComplexityCounts span_counts(const py::AstNode& tree, const std::vector<py::Token>& tokens,
                             int first_line, int last_line) {
    ComplexityCounts c;
    auto in_span = [&](int line) { return line >= first_line && line <= last_line; };

    for (const auto& ev : collect_name_events(tree)) {
        if (!in_span(ev.line)) continue;
        if (ev.kind == NameEventKind::Use)
            ++c.var_uses;
        else
            ++c.var_defs;
    }

    py::walk(tree, [&](const py::AstNode& n) {
        if (!in_span(n.line)) return;
        switch (n.kind) {
            case py::NodeKind::Call:
                ++c.calls;
                break;
            case py::NodeKind::BinOp:
                if (arith_binop(n.text)) ++c.arith_ops;
                break;
            case py::NodeKind::UnaryOp:
                if (n.text == "-") ++c.arith_ops;
                break;
            case py::NodeKind::AugAssign:
                if (arith_augop(n.text)) ++c.arith_ops;
                break;
            default:
                break;
        }
    });

    std::set<int> code_lines;
    for (const auto& tok : tokens) {
        if (tok.type != py::TokenType::Name && tok.type != py::TokenType::Number &&
            tok.type != py::TokenType::Str && tok.type != py::TokenType::Op)
            continue;
        for (int line = tok.line; line <= tok.end_line; ++line)
            if (in_span(line)) code_lines.insert(line);
    }
    c.loc = static_cast<int>(code_lines.size());
    return c;
}

}  // namespace detail

ComplexityCounts complexity_counts(const std::string& source, int first_line, int last_line) {
    py::AstNode tree = py::parse_python(source);
    py::LexResult lex = py::lex_python(source);
    return detail::span_counts(tree, lex.tokens, first_line, last_line);
}

} // namespace reprokit
