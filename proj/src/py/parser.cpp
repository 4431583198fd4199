// SPDX-License-Identifier: Apache-2.0
#include "reprokit/py/parser.hpp"

#include "reprokit/errors.hpp"

namespace reprokit::py {

namespace {

// Pins every node of a sub-parsed f-string field to the host literal's line.
void relocate(AstNode& n, int line) {
    n.line = line;
    n.end_line = line;
    for (auto& c : n.children) relocate(c, line);
}

bool is_assignable(const AstNode& n) {
    switch (n.kind) {
        case NodeKind::Name:
        case NodeKind::Attribute:
        case NodeKind::Subscript:
        case NodeKind::Starred:
            return true;
        case NodeKind::Tuple:
        case NodeKind::List:
            for (const auto& c : n.children)
                if (!is_assignable(c)) return false;
            return true;
        default:
            return false;
    }
}

class Parser {
public:
    explicit Parser(const std::string& source): lex_(lex_python(source)) {}

    AstNode parse_module() {
        AstNode mod = make(NodeKind::Module);
        mod.line = 1;
        while (!at_type(TokenType::End)) {
            mod.children.push_back(statement());
        }
        mod.end_line = prev_end_line();
        return mod;
    }

private:
    // --- token cursor -----------------------------------------------------

    const Token& cur() const { return lex_.tokens[idx_]; }
    const Token& peek(size_t ahead = 1) const {
        size_t i = idx_ + ahead;
        return i < lex_.tokens.size() ? lex_.tokens[i] : lex_.tokens.back();
    }
    bool at_type(TokenType t) const { return cur().type == t; }
    bool at_op(std::string_view text) const {
        return cur().type == TokenType::Op && cur().text == text;
    }
    bool at_kw(std::string_view kw) const {
        return cur().type == TokenType::Name && cur().text == kw;
    }
    void advance() {
        TokenType t = cur().type;
        if (t == TokenType::Name || t == TokenType::Number || t == TokenType::Str ||
            t == TokenType::Op)
            last_content_end_line_ = cur().end_line;
        if (idx_ + 1 < lex_.tokens.size()) ++idx_;
    }
    bool accept_op(std::string_view text) {
        if (!at_op(text)) return false;
        advance();
        return true;
    }
    bool accept_kw(std::string_view kw) {
        if (!at_kw(kw)) return false;
        advance();
        return true;
    }
    void expect_op(std::string_view text) {
        if (!accept_op(text)) fail(std::string("expected '") + std::string(text) + "'");
    }
    void expect_kw(std::string_view kw) {
        if (!accept_kw(kw)) fail(std::string("expected '") + std::string(kw) + "'");
    }
    void expect_newline() {
        if (at_type(TokenType::End)) return;
        if (!at_type(TokenType::Newline)) fail("expected end of line");
        advance();
    }
    std::string expect_name() {
        if (!at_type(TokenType::Name) || is_python_keyword(cur().text))
            fail("expected identifier");
        std::string n = cur().text;
        advance();
        return n;
    }
    int prev_end_line() const { return last_content_end_line_; }
    [[noreturn]] void fail(const std::string& msg) const {
        std::string got = cur().type == TokenType::Newline ? "end of line"
                          : cur().type == TokenType::Indent ? "indent"
                          : cur().type == TokenType::Dedent ? "dedent"
                          : cur().type == TokenType::End    ? "end of input"
                                                            : "'" + cur().text + "'";
        throw ParseError(msg + ", got " + got, cur().line, cur().col);
    }

    AstNode make(NodeKind kind, std::string text = "") const {
        AstNode n;
        n.kind = kind;
        n.text = std::move(text);
        n.line = cur().line;
        n.col = cur().col;
        n.end_line = cur().end_line;
        return n;
    }
    AstNode& done(AstNode& n) {
        n.end_line = prev_end_line();
        return n;
    }

    // --- statements --------------------------------------------------------

    AstNode statement() {
        if (at_kw("if")) return if_stmt();
        if (at_kw("while")) return while_stmt();
        if (at_kw("for")) return for_stmt(false);
        if (at_kw("try")) return try_stmt();
        if (at_kw("with")) return with_stmt(false);
        if (at_kw("def")) return funcdef(false, make(NodeKind::DecoratorList));
        if (at_kw("class")) return classdef(make(NodeKind::DecoratorList));
        if (at_op("@")) return decorated();
        if (at_kw("async")) return async_stmt();
        return simple_line();
    }

    AstNode async_stmt() {
        expect_kw("async");
        if (at_kw("def")) return funcdef(true, make(NodeKind::DecoratorList));
        if (at_kw("for")) return for_stmt(true);
        if (at_kw("with")) return with_stmt(true);
        fail("expected 'def', 'for' or 'with' after 'async'");
    }

    AstNode decorated() {
        AstNode decorators = make(NodeKind::DecoratorList);
        while (at_op("@")) {
            advance();
            decorators.children.push_back(test());
            expect_newline();
        }
        if (at_kw("def")) return funcdef(false, std::move(decorators));
        if (accept_kw("async")) {
            if (at_kw("def")) return funcdef(true, std::move(decorators));
            fail("expected 'def' after 'async'");
        }
        if (at_kw("class")) return classdef(std::move(decorators));
        fail("expected function or class after decorators");
    }

    AstNode simple_line() {
        AstNode first = simple_stmt();
        if (at_op(";")) {
            // a; b; c on one line — wrap the rest as siblings of a Body? No:
            // statements are returned one at a time, so fold into the module
            // order by chaining through a flat Body is wrong. Instead emit a
            // synthetic container only when actually needed.
            AstNode block = make(NodeKind::Body);
            block.line = first.line;
            block.children.push_back(std::move(first));
            while (accept_op(";")) {
                if (at_type(TokenType::Newline) || at_type(TokenType::End)) break;
                block.children.push_back(simple_stmt());
            }
            expect_newline();
            done(block);
            if (block.children.size() == 1) return std::move(block.children[0]);
            return block;
        }
        expect_newline();
        return first;
    }

    AstNode simple_stmt() {
        if (at_kw("return")) return return_stmt();
        if (at_kw("pass")) return bare(NodeKind::Pass);
        if (at_kw("break")) return bare(NodeKind::Break);
        if (at_kw("continue")) return bare(NodeKind::Continue);
        if (at_kw("import")) return import_stmt();
        if (at_kw("from")) return import_from();
        if (at_kw("raise")) return raise_stmt();
        if (at_kw("global")) return scope_decl(NodeKind::Global);
        if (at_kw("nonlocal")) return scope_decl(NodeKind::Nonlocal);
        if (at_kw("del")) return del_stmt();
        if (at_kw("assert")) return assert_stmt();
        return expr_stmt();
    }

    AstNode bare(NodeKind kind) {
        AstNode n = make(kind);
        advance();
        return done(n);
    }

    AstNode return_stmt() {
        AstNode n = make(NodeKind::Return);
        advance();
        if (!at_type(TokenType::Newline) && !at_op(";") && !at_type(TokenType::End))
            n.children.push_back(testlist_star());
        return done(n);
    }

    AstNode raise_stmt() {
        AstNode n = make(NodeKind::Raise);
        advance();
        if (!at_type(TokenType::Newline) && !at_op(";") && !at_type(TokenType::End)) {
            n.children.push_back(test());
            if (accept_kw("from")) n.children.push_back(test());
        }
        return done(n);
    }

    AstNode scope_decl(NodeKind kind) {
        AstNode n = make(kind);
        advance();
        do {
            AstNode name = make(NodeKind::Name, cur().text);
            expect_name();
            n.children.push_back(done(name));
        } while (accept_op(","));
        return done(n);
    }

    AstNode del_stmt() {
        AstNode n = make(NodeKind::Delete);
        advance();
        do {
            n.children.push_back(test());
        } while (accept_op(","));
        return done(n);
    }

    AstNode assert_stmt() {
        AstNode n = make(NodeKind::Assert);
        advance();
        n.children.push_back(test());
        if (accept_op(",")) n.children.push_back(test());
        return done(n);
    }

    AstNode import_stmt() {
        AstNode n = make(NodeKind::Import);
        advance();
        do {
            n.children.push_back(import_alias(dotted_name()));
        } while (accept_op(","));
        return done(n);
    }

    AstNode import_from() {
        AstNode n = make(NodeKind::ImportFrom);
        advance();
        std::string module;
        while (at_op(".") || at_op("...")) {
            module += cur().text;
            advance();
        }
        if (!at_kw("import")) module += dotted_name();
        n.text = module;
        expect_kw("import");
        if (at_op("*")) {
            AstNode star = make(NodeKind::ImportAlias, "*");
            advance();
            n.children.push_back(done(star));
            return done(n);
        }
        bool parens = accept_op("(");
        do {
            if (parens && at_op(")")) break;
            n.children.push_back(import_alias(expect_name()));
        } while (accept_op(","));
        if (parens) expect_op(")");
        return done(n);
    }

    std::string dotted_name() {
        std::string name = expect_name();
        while (at_op(".")) {
            advance();
            name += "." + expect_name();
        }
        return name;
    }

    AstNode import_alias(std::string name) {
        AstNode alias = make(NodeKind::ImportAlias, std::move(name));
        if (accept_kw("as")) {
            AstNode local = make(NodeKind::Alias, cur().text);
            expect_name();
            alias.children.push_back(done(local));
        }
        return done(alias);
    }

    AstNode expr_stmt() {
        AstNode first = testlist_star();
        if (at_op(":")) {  // annotated assignment
            AstNode n = make(NodeKind::AnnAssign);
            n.line = first.line;
            n.col = first.col;
            advance();
            if (!is_assignable(first)) fail("illegal annotation target");
            AstNode ann = make(NodeKind::Annotation);
            ann.children.push_back(test());
            done(ann);
            n.children.push_back(std::move(first));
            n.children.push_back(std::move(ann));
            if (accept_op("=")) n.children.push_back(testlist_star());
            return done(n);
        }
        static const char* aug_ops[] = {"+=", "-=", "*=", "/=", "//=", "%=",
                                        "**=", ">>=", "<<=", "&=", "|=", "^=", "@="};
        for (const char* op : aug_ops) {
            if (at_op(op)) {
                AstNode n = make(NodeKind::AugAssign, op);
                n.line = first.line;
                n.col = first.col;
                advance();
                if (!is_assignable(first) || first.kind == NodeKind::Tuple ||
                    first.kind == NodeKind::List || first.kind == NodeKind::Starred)
                    fail("illegal augmented-assignment target");
                n.children.push_back(std::move(first));
                n.children.push_back(testlist_star());
                return done(n);
            }
        }
        if (at_op("=")) {
            AstNode n = make(NodeKind::Assign);
            n.line = first.line;
            n.col = first.col;
            if (!is_assignable(first)) fail("cannot assign to this expression");
            n.children.push_back(std::move(first));
            while (accept_op("=")) {
                AstNode rhs = testlist_star();
                if (at_op("=") && !is_assignable(rhs)) fail("cannot assign to this expression");
                n.children.push_back(std::move(rhs));
            }
            return done(n);
        }
        AstNode n = make(NodeKind::ExprStmt);
        n.line = first.line;
        n.col = first.col;
        n.children.push_back(std::move(first));
        return done(n);
    }

    // --- compound statements ------------------------------------------------

    std::vector<AstNode> suite() {
        std::vector<AstNode> stmts;
        expect_op(":");
        if (at_type(TokenType::Newline)) {
            advance();
            if (!at_type(TokenType::Indent)) fail("expected an indented block");
            advance();
            while (!at_type(TokenType::Dedent) && !at_type(TokenType::End))
                stmts.push_back(statement());
            if (at_type(TokenType::Dedent)) advance();
        } else {
            // inline suite: stmt; stmt on the header line
            stmts.push_back(simple_stmt());
            while (accept_op(";")) {
                if (at_type(TokenType::Newline) || at_type(TokenType::End)) break;
                stmts.push_back(simple_stmt());
            }
            expect_newline();
        }
        return stmts;
    }

    AstNode block_of(std::vector<AstNode> stmts, NodeKind kind) {
        AstNode body = AstNode{kind, "", 0, 0, 0, {}};
        if (!stmts.empty()) {
            body.line = stmts.front().line;
            body.col = stmts.front().col;
            body.end_line = stmts.back().end_line;
        }
        body.children = std::move(stmts);
        return body;
    }

    AstNode if_stmt() {
        AstNode n = make(NodeKind::If);
        advance();
        n.children.push_back(namedexpr_test());
        n.children.push_back(block_of(suite(), NodeKind::Body));
        if (at_kw("elif")) {
            AstNode nested = if_stmt_from_elif();
            AstNode orelse = block_of({}, NodeKind::OrElse);
            orelse.line = nested.line;
            orelse.end_line = nested.end_line;
            orelse.children.push_back(std::move(nested));
            n.children.push_back(std::move(orelse));
        } else if (accept_kw("else")) {
            n.children.push_back(block_of(suite(), NodeKind::OrElse));
        }
        return done(n);
    }

    AstNode if_stmt_from_elif() {
        AstNode n = make(NodeKind::If);
        expect_kw("elif");
        n.children.push_back(namedexpr_test());
        n.children.push_back(block_of(suite(), NodeKind::Body));
        if (at_kw("elif")) {
            AstNode nested = if_stmt_from_elif();
            AstNode orelse = block_of({}, NodeKind::OrElse);
            orelse.line = nested.line;
            orelse.end_line = nested.end_line;
            orelse.children.push_back(std::move(nested));
            n.children.push_back(std::move(orelse));
        } else if (accept_kw("else")) {
            n.children.push_back(block_of(suite(), NodeKind::OrElse));
        }
        return done(n);
    }

    AstNode while_stmt() {
        AstNode n = make(NodeKind::While);
        advance();
        n.children.push_back(namedexpr_test());
        n.children.push_back(block_of(suite(), NodeKind::Body));
        if (accept_kw("else")) n.children.push_back(block_of(suite(), NodeKind::OrElse));
        return done(n);
    }

    AstNode for_stmt(bool is_async) {
        AstNode n = make(is_async ? NodeKind::AsyncFor : NodeKind::For);
        expect_kw("for");
        AstNode target = target_list();
        expect_kw("in");
        n.children.push_back(std::move(target));
        n.children.push_back(testlist_star());
        n.children.push_back(block_of(suite(), NodeKind::Body));
        if (accept_kw("else")) n.children.push_back(block_of(suite(), NodeKind::OrElse));
        return done(n);
    }

    AstNode try_stmt() {
        AstNode n = make(NodeKind::Try);
        advance();
        n.children.push_back(block_of(suite(), NodeKind::Body));
        bool saw_handler = false;
        while (at_kw("except")) {
            saw_handler = true;
            AstNode handler = make(NodeKind::ExceptHandler);
            advance();
            if (!at_op(":")) {
                handler.children.push_back(test());
                if (accept_kw("as")) {
                    handler.text = cur().text;
                    expect_name();
                }
            }
            handler.children.push_back(block_of(suite(), NodeKind::Body));
            n.children.push_back(done(handler));
        }
        if (saw_handler && accept_kw("else"))
            n.children.push_back(block_of(suite(), NodeKind::OrElse));
        if (accept_kw("finally"))
            n.children.push_back(block_of(suite(), NodeKind::FinallyBody));
        else if (!saw_handler)
            fail("expected 'except' or 'finally'");
        return done(n);
    }

    AstNode with_stmt(bool is_async) {
        AstNode n = make(is_async ? NodeKind::AsyncWith : NodeKind::With);
        expect_kw("with");
        do {
            AstNode item = make(NodeKind::WithItem);
            item.children.push_back(test());
            if (accept_kw("as")) item.children.push_back(target_atom());
            n.children.push_back(done(item));
        } while (accept_op(","));
        n.children.push_back(block_of(suite(), NodeKind::Body));
        return done(n);
    }

    AstNode funcdef(bool is_async, AstNode decorators) {
        AstNode n = make(is_async ? NodeKind::AsyncFunctionDef : NodeKind::FunctionDef);
        expect_kw("def");
        n.text = expect_name();
        expect_op("(");
        AstNode params = param_list(true);
        expect_op(")");
        n.children.push_back(std::move(decorators));
        n.children.push_back(std::move(params));
        if (accept_op("->")) {
            AstNode ret = make(NodeKind::ReturnAnnotation);
            ret.children.push_back(test());
            n.children.push_back(done(ret));
        }
        n.children.push_back(block_of(suite(), NodeKind::Body));
        return done(n);
    }

    AstNode classdef(AstNode decorators) {
        AstNode n = make(NodeKind::ClassDef);
        expect_kw("class");
        n.text = expect_name();
        AstNode args = make(NodeKind::Arguments);
        if (accept_op("(")) {
            while (!at_op(")")) {
                args.children.push_back(call_argument());
                if (!accept_op(",")) break;
            }
            expect_op(")");
        }
        n.children.push_back(std::move(decorators));
        n.children.push_back(done(args));
        n.children.push_back(block_of(suite(), NodeKind::Body));
        return done(n);
    }

    // allow_annotations distinguishes def parameters from lambda parameters
    AstNode param_list(bool allow_annotations) {
        AstNode params = make(NodeKind::Params);
        while (true) {
            if (at_op(")") || at_op(":") || at_type(TokenType::Newline)) break;
            if (accept_op("/")) {  // positional-only marker, dropped
                if (!accept_op(",")) break;
                continue;
            }
            if (at_op("**")) {
                advance();
                AstNode p = make(NodeKind::DoubleStarParam, expect_name());
                if (allow_annotations && accept_op(":")) {
                    AstNode ann = make(NodeKind::Annotation);
                    ann.children.push_back(test());
                    p.children.push_back(done(ann));
                }
                params.children.push_back(done(p));
                accept_op(",");
                break;
            }
            if (at_op("*")) {
                advance();
                AstNode p = make(NodeKind::StarParam);
                if (at_type(TokenType::Name) && !is_python_keyword(cur().text)) {
                    p.text = expect_name();
                    if (allow_annotations && accept_op(":")) {
                        AstNode ann = make(NodeKind::Annotation);
                        ann.children.push_back(test());
                        p.children.push_back(done(ann));
                    }
                    params.children.push_back(done(p));
                }
                if (!accept_op(",")) break;
                continue;
            }
            AstNode p = make(NodeKind::Param, expect_name());
            if (allow_annotations && accept_op(":")) {
                AstNode ann = make(NodeKind::Annotation);
                ann.children.push_back(test());
                p.children.push_back(done(ann));
            }
            if (accept_op("=")) {
                AstNode def = make(NodeKind::Default);
                def.children.push_back(test());
                p.children.push_back(done(def));
            }
            params.children.push_back(done(p));
            if (!accept_op(",")) break;
        }
        return done(params);
    }

    // --- assignment targets --------------------------------------------------

    AstNode target_atom() {
        AstNode t = or_expr();
        if (!is_assignable(t)) fail("invalid assignment target");
        return t;
    }

    AstNode target_list() {
        AstNode first = star_or_target();
        if (!at_op(",")) return first;
        AstNode tup = make(NodeKind::Tuple);
        tup.line = first.line;
        tup.col = first.col;
        tup.children.push_back(std::move(first));
        while (accept_op(",")) {
            if (at_kw("in") || at_op("=")) break;
            tup.children.push_back(star_or_target());
        }
        return done(tup);
    }

    AstNode star_or_target() {
        if (at_op("*")) {
            AstNode st = make(NodeKind::Starred);
            advance();
            st.children.push_back(target_atom());
            return done(st);
        }
        return target_atom();
    }

    // --- expressions -----------------------------------------------------------

    AstNode namedexpr_test() {
        AstNode first = test();
        if (at_op(":=")) {
            if (first.kind != NodeKind::Name) fail("walrus target must be a name");
            AstNode n = make(NodeKind::NamedExpr);
            n.line = first.line;
            n.col = first.col;
            advance();
            n.children.push_back(std::move(first));
            n.children.push_back(test());
            return done(n);
        }
        return first;
    }

    AstNode test() {
        if (at_kw("lambda")) return lambda_expr();
        AstNode body = or_test();
        if (at_kw("if")) {
            AstNode n = make(NodeKind::IfExp);
            n.line = body.line;
            n.col = body.col;
            advance();
            AstNode cond = or_test();
            expect_kw("else");
            n.children.push_back(std::move(body));
            n.children.push_back(std::move(cond));
            n.children.push_back(test());
            return done(n);
        }
        return body;
    }

    AstNode lambda_expr() {
        AstNode n = make(NodeKind::Lambda);
        expect_kw("lambda");
        n.children.push_back(param_list(false));
        expect_op(":");
        n.children.push_back(test());
        return done(n);
    }

    AstNode or_test() {
        AstNode left = and_test();
        if (!at_kw("or")) return left;
        AstNode n = make(NodeKind::BoolOp, "or");
        n.line = left.line;
        n.col = left.col;
        n.children.push_back(std::move(left));
        while (accept_kw("or")) n.children.push_back(and_test());
        return done(n);
    }

    AstNode and_test() {
        AstNode left = not_test();
        if (!at_kw("and")) return left;
        AstNode n = make(NodeKind::BoolOp, "and");
        n.line = left.line;
        n.col = left.col;
        n.children.push_back(std::move(left));
        while (accept_kw("and")) n.children.push_back(not_test());
        return done(n);
    }

    AstNode not_test() {
        if (at_kw("not")) {
            AstNode n = make(NodeKind::UnaryOp, "not");
            advance();
            n.children.push_back(not_test());
            return done(n);
        }
        return comparison();
    }

    AstNode comparison() {
        AstNode left = or_expr();
        if (!at_comparison_op()) return left;
        AstNode n = make(NodeKind::Compare);
        n.line = left.line;
        n.col = left.col;
        n.children.push_back(std::move(left));
        while (at_comparison_op()) {
            AstNode op = make(NodeKind::CmpOp, comparison_op_text());
            op.children.push_back(or_expr());
            n.children.push_back(done(op));
        }
        return done(n);
    }

    bool at_comparison_op() const {
        if (cur().type == TokenType::Op) {
            const std::string& t = cur().text;
            return t == "<" || t == ">" || t == "<=" || t == ">=" || t == "==" || t == "!=";
        }
        return at_kw("in") || at_kw("is") ||
               (at_kw("not") && peek().type == TokenType::Name && peek().text == "in");
    }

    std::string comparison_op_text() {
        if (cur().type == TokenType::Op) {
            std::string t = cur().text;
            advance();
            return t;
        }
        if (accept_kw("in")) return "in";
        if (accept_kw("not")) {
            expect_kw("in");
            return "not in";
        }
        expect_kw("is");
        if (accept_kw("not")) return "is not";
        return "is";
    }

    AstNode binop_chain(AstNode (Parser::*next)(), std::initializer_list<std::string_view> ops) {
        AstNode left = (this->*next)();
        while (cur().type == TokenType::Op) {
            bool matched = false;
            for (auto op : ops) {
                if (cur().text == op) {
                    AstNode n = make(NodeKind::BinOp, std::string(op));
                    n.line = left.line;
                    n.col = left.col;
                    advance();
                    n.children.push_back(std::move(left));
                    n.children.push_back((this->*next)());
                    left = std::move(done(n));
                    matched = true;
                    break;
                }
            }
            if (!matched) break;
        }
        return left;
    }

    AstNode or_expr() { return binop_chain(&Parser::xor_expr, {"|"}); }
    AstNode xor_expr() { return binop_chain(&Parser::and_expr, {"^"}); }
    AstNode and_expr() { return binop_chain(&Parser::shift_expr, {"&"}); }
    AstNode shift_expr() { return binop_chain(&Parser::arith_expr, {"<<", ">>"}); }
    AstNode arith_expr() { return binop_chain(&Parser::term, {"+", "-"}); }
    AstNode term() { return binop_chain(&Parser::factor, {"*", "/", "//", "%", "@"}); }

    AstNode factor() {
        if (at_op("+") || at_op("-") || at_op("~")) {
            AstNode n = make(NodeKind::UnaryOp, cur().text);
            advance();
            n.children.push_back(factor());
            return done(n);
        }
        return power();
    }

    AstNode power() {
        AstNode base = unary_postfix();
        if (at_op("**")) {
            AstNode n = make(NodeKind::BinOp, "**");
            n.line = base.line;
            n.col = base.col;
            advance();
            n.children.push_back(std::move(base));
            n.children.push_back(factor());
            return done(n);
        }
        return base;
    }

    AstNode unary_postfix() {
        if (at_kw("await")) {
            AstNode n = make(NodeKind::Await);
            advance();
            n.children.push_back(unary_postfix());
            return done(n);
        }
        AstNode node = atom();
        while (true) {
            if (at_op("(")) {
                AstNode call = make(NodeKind::Call);
                call.line = node.line;
                call.col = node.col;
                advance();
                call.children.push_back(std::move(node));
                // generator expression as the sole unparenthesized argument
                while (!at_op(")")) {
                    AstNode arg = call_argument();
                    if (at_kw("for") && arg.kind != NodeKind::Keyword &&
                        arg.kind != NodeKind::Starred && arg.kind != NodeKind::DoubleStarred) {
                        AstNode gen = make(NodeKind::GeneratorExp);
                        gen.line = arg.line;
                        gen.col = arg.col;
                        gen.children.push_back(std::move(arg));
                        comp_clauses(gen);
                        done(gen);
                        call.children.push_back(std::move(gen));
                        break;
                    }
                    call.children.push_back(std::move(arg));
                    if (!accept_op(",")) break;
                }
                expect_op(")");
                node = std::move(done(call));
            } else if (at_op("[")) {
                AstNode sub = make(NodeKind::Subscript);
                sub.line = node.line;
                sub.col = node.col;
                advance();
                sub.children.push_back(std::move(node));
                sub.children.push_back(subscript_index());
                expect_op("]");
                node = std::move(done(sub));
            } else if (at_op(".")) {
                advance();
                AstNode attr = make(NodeKind::Attribute, expect_name());
                attr.line = node.line;
                attr.col = node.col;
                attr.children.push_back(std::move(node));
                node = std::move(done(attr));
            } else {
                break;
            }
        }
        return node;
    }

    AstNode call_argument() {
        if (at_op("*")) {
            AstNode n = make(NodeKind::Starred);
            advance();
            n.children.push_back(test());
            return done(n);
        }
        if (at_op("**")) {
            AstNode n = make(NodeKind::DoubleStarred);
            advance();
            n.children.push_back(test());
            return done(n);
        }
        AstNode first = test();
        if (at_op("=") && first.kind == NodeKind::Name) {
            AstNode kw = make(NodeKind::Keyword, first.text);
            kw.line = first.line;
            kw.col = first.col;
            advance();
            kw.children.push_back(test());
            return done(kw);
        }
        if (at_op(":=")) {
            if (first.kind != NodeKind::Name) fail("walrus target must be a name");
            AstNode n = make(NodeKind::NamedExpr);
            n.line = first.line;
            n.col = first.col;
            advance();
            n.children.push_back(std::move(first));
            n.children.push_back(test());
            return done(n);
        }
        return first;
    }

    AstNode subscript_index() {
        AstNode first = slice_item();
        if (!at_op(",")) return first;
        AstNode tup = make(NodeKind::Tuple);
        tup.line = first.line;
        tup.col = first.col;
        tup.children.push_back(std::move(first));
        while (accept_op(",")) {
            if (at_op("]")) break;
            tup.children.push_back(slice_item());
        }
        return done(tup);
    }

    AstNode slice_item() {
        AstNode lower = make(NodeKind::Empty);
        bool have_lower = false;
        if (!at_op(":")) {
            if (at_op("*")) {
                AstNode st = make(NodeKind::Starred);
                advance();
                st.children.push_back(test());
                return done(st);
            }
            lower = test();
            have_lower = true;
        }
        if (!at_op(":")) {
            if (!have_lower) fail("expected subscript expression");
            return lower;
        }
        AstNode n = make(NodeKind::Slice);
        n.line = have_lower ? lower.line : cur().line;
        advance();
        n.children.push_back(std::move(lower));
        if (!at_op(":") && !at_op("]") && !at_op(","))
            n.children.push_back(test());
        else
            n.children.push_back(make(NodeKind::Empty));
        if (accept_op(":")) {
            if (!at_op("]") && !at_op(","))
                n.children.push_back(test());
            else
                n.children.push_back(make(NodeKind::Empty));
        } else {
            n.children.push_back(make(NodeKind::Empty));
        }
        return done(n);
    }

    // comma-separated expressions, possibly starred, folding into a Tuple
    AstNode testlist_star() {
        AstNode first = star_or_test();
        if (!at_op(",")) return first;
        AstNode tup = make(NodeKind::Tuple);
        tup.line = first.line;
        tup.col = first.col;
        tup.children.push_back(std::move(first));
        while (accept_op(",")) {
            if (at_type(TokenType::Newline) || at_type(TokenType::End) || at_op("=") ||
                at_op(")") || at_op("]") || at_op("}") || at_op(":") || at_op(";"))
                break;
            tup.children.push_back(star_or_test());
        }
        return done(tup);
    }

    AstNode star_or_test() {
        if (at_op("*")) {
            AstNode st = make(NodeKind::Starred);
            advance();
            st.children.push_back(or_expr());
            return done(st);
        }
        return test();
    }

    void comp_clauses(AstNode& comp) {
        while (true) {
            if (accept_kw("async")) {
                expect_kw("for");
            } else if (!accept_kw("for")) {
                break;
            }
            AstNode clause = make(NodeKind::CompFor);
            clause.children.push_back(target_list());
            expect_kw("in");
            clause.children.push_back(or_test());
            while (at_kw("if")) {
                AstNode cond = make(NodeKind::CompIf);
                advance();
                cond.children.push_back(or_test());
                clause.children.push_back(done(cond));
            }
            comp.children.push_back(done(clause));
        }
    }

    AstNode atom() {
        const Token& t = cur();
        switch (t.type) {
            case TokenType::Number: {
                AstNode n = make(NodeKind::Number, t.text);
                advance();
                return done(n);
            }
            case TokenType::Str:
                return string_atom();
            case TokenType::Name:
                return name_atom();
            case TokenType::Op:
                if (t.text == "(") return paren_atom();
                if (t.text == "[") return list_atom();
                if (t.text == "{") return dict_or_set_atom();
                if (t.text == "...") {
                    AstNode n = make(NodeKind::Const, "...");
                    advance();
                    return done(n);
                }
                break;
            default:
                break;
        }
        fail("expected an expression");
    }

    AstNode name_atom() {
        const std::string& word = cur().text;
        if (word == "True" || word == "False" || word == "None") {
            AstNode n = make(NodeKind::Const, word);
            advance();
            return done(n);
        }
        if (word == "yield") {
            AstNode n = make(NodeKind::Yield);
            advance();
            if (accept_kw("from")) {
                n.kind = NodeKind::YieldFrom;
                n.children.push_back(test());
                return done(n);
            }
            if (!at_type(TokenType::Newline) && !at_op(")") && !at_op("]") && !at_op("}") &&
                !at_op(",") && !at_op(":") && !at_op(";") && !at_type(TokenType::End))
                n.children.push_back(testlist_star());
            return done(n);
        }
        if (is_python_keyword(word)) fail("unexpected keyword '" + word + "'");
        AstNode n = make(NodeKind::Name, word);
        advance();
        return done(n);
    }

    AstNode string_atom() {
        // adjacent literals concatenate; an f-string anywhere makes the whole
        // atom an FString
        AstNode first = string_piece();
        if (!at_type(TokenType::Str))
            return first;
        AstNode joined = make(NodeKind::FString);
        joined.line = first.line;
        joined.col = first.col;
        bool any_formatted = first.kind == NodeKind::FString;
        if (first.kind == NodeKind::FString)
            for (auto& c : first.children) joined.children.push_back(std::move(c));
        else
            joined.children.push_back(std::move(first));
        while (at_type(TokenType::Str)) {
            AstNode piece = string_piece();
            if (piece.kind == NodeKind::FString) {
                any_formatted = true;
                for (auto& c : piece.children) joined.children.push_back(std::move(c));
            } else {
                joined.children.push_back(std::move(piece));
            }
        }
        done(joined);
        if (!any_formatted) {
            // plain concatenation stays a single Str with the pieces' texts glued
            AstNode flat = AstNode{NodeKind::Str, "", joined.line, joined.col,
                                   joined.end_line, {}};
            for (auto& c : joined.children) flat.text += c.text;
            return flat;
        }
        return joined;
    }

    AstNode string_piece() {
        Token t = cur();
        advance();
        size_t qpos = t.text.find_first_of("'\"");
        std::string prefix = qpos == std::string::npos ? "" : t.text.substr(0, qpos);
        bool is_f = prefix.find('f') != std::string::npos || prefix.find('F') != std::string::npos;
        if (!is_f) {
            AstNode n = AstNode{NodeKind::Str, t.text, t.line, t.col, t.end_line, {}};
            return n;
        }
        return fstring_node(t);
    }

    // Re-scans an f-string literal's body for {expr} fields; each becomes a
    // FormattedValue whose child is parsed from the brace contents. Scan
    // failures degrade to a plain Str piece.
    AstNode fstring_node(const Token& t) {
        AstNode n = AstNode{NodeKind::FString, "", t.line, t.col, t.end_line, {}};
        const std::string& text = t.text;
        size_t qpos = text.find_first_of("'\"");
        if (qpos == std::string::npos) return AstNode{NodeKind::Str, text, t.line, t.col, t.end_line, {}};
        char q = text[qpos];
        bool triple = qpos + 2 < text.size() && text[qpos + 1] == q && text[qpos + 2] == q;
        size_t body_begin = qpos + (triple ? 3 : 1);
        size_t body_end = text.size() >= (triple ? 3u : 1u) ? text.size() - (triple ? 3 : 1) : body_begin;
        std::string literal;
        size_t i = body_begin;
        auto flush_literal = [&]() {
            if (literal.empty()) return;
            n.children.push_back(AstNode{NodeKind::Str, literal, t.line, t.col, t.line, {}});
            literal.clear();
        };
        while (i < body_end) {
            char c = text[i];
            if (c == '{' && i + 1 < body_end && text[i + 1] == '{') {
                literal += '{';
                i += 2;
                continue;
            }
            if (c == '}' && i + 1 < body_end && text[i + 1] == '}') {
                literal += '}';
                i += 2;
                continue;
            }
            if (c == '{') {
                size_t j = i + 1;
                int depth = 1;
                char in_str = 0;
                size_t expr_end = std::string::npos;
                for (; j < body_end; ++j) {
                    char d = text[j];
                    if (in_str) {
                        if (d == '\\') ++j;
                        else if (d == in_str) in_str = 0;
                        continue;
                    }
                    if (d == '\'' || d == '"') in_str = d;
                    else if (d == '{' || d == '[' || d == '(') ++depth;
                    else if (d == '}' || d == ']' || d == ')') {
                        --depth;
                        if (depth == 0 && d == '}') { expr_end = j; break; }
                    } else if (depth == 1 && (d == '!' || d == ':')) {
                        // conversion / format spec: expression proper ends here
                        expr_end = j;
                        // skip to the matching close brace
                        int d2 = 1;
                        size_t k = j;
                        char s2 = 0;
                        for (; k < body_end; ++k) {
                            char e = text[k];
                            if (s2) {
                                if (e == '\\') ++k;
                                else if (e == s2) s2 = 0;
                                continue;
                            }
                            if (e == '\'' || e == '"') s2 = e;
                            else if (e == '{') ++d2;
                            else if (e == '}') {
                                --d2;
                                if (d2 == 0) break;
                            }
                        }
                        j = k;
                        break;
                    }
                }
                if (expr_end == std::string::npos) {
                    // unbalanced braces: treat the rest literally
                    literal += text.substr(i, body_end - i);
                    i = body_end;
                    continue;
                }
                std::string inner = text.substr(i + 1, expr_end - i - 1);
                // trailing '=' debug form: "x=" prints and evaluates
                if (!inner.empty() && inner.back() == '=') inner.pop_back();
                flush_literal();
                AstNode fv = AstNode{NodeKind::FormattedValue, "", t.line, t.col, t.line, {}};
                try {
                    AstNode mod = parse_python(inner + "\n");
                    if (mod.children.size() == 1 && mod.children[0].kind == NodeKind::ExprStmt) {
                        AstNode expr = std::move(mod.children[0].children[0]);
                        relocate(expr, t.line);
                        fv.children.push_back(std::move(expr));
                    }
                } catch (const ParseError&) {
                    // leave the field empty; the text is still represented
                }
                n.children.push_back(std::move(fv));
                i = (j < body_end ? j + 1 : body_end);
                continue;
            }
            literal += c;
            ++i;
        }
        flush_literal();
        return n;
    }

    AstNode paren_atom() {
        AstNode open = make(NodeKind::Tuple);
        expect_op("(");
        if (at_op(")")) {  // empty tuple
            advance();
            return done(open);
        }
        if (at_kw("yield")) {
            AstNode y = name_atom();
            expect_op(")");
            return y;
        }
        AstNode first = star_or_namedexpr();
        if (at_kw("for") || at_kw("async")) {
            AstNode gen = make(NodeKind::GeneratorExp);
            gen.line = open.line;
            gen.col = open.col;
            gen.children.push_back(std::move(first));
            comp_clauses(gen);
            expect_op(")");
            return done(gen);
        }
        if (at_op(",")) {
            open.children.push_back(std::move(first));
            while (accept_op(",")) {
                if (at_op(")")) break;
                open.children.push_back(star_or_namedexpr());
            }
            expect_op(")");
            return done(open);
        }
        expect_op(")");
        first.end_line = prev_end_line();
        return first;  // plain parenthesized expression
    }

    AstNode star_or_namedexpr() {
        if (at_op("*")) {
            AstNode st = make(NodeKind::Starred);
            advance();
            st.children.push_back(or_expr());
            return done(st);
        }
        return namedexpr_test();
    }

    AstNode list_atom() {
        AstNode n = make(NodeKind::List);
        expect_op("[");
        if (at_op("]")) {
            advance();
            return done(n);
        }
        AstNode first = star_or_namedexpr();
        if (at_kw("for") || at_kw("async")) {
            AstNode comp = make(NodeKind::ListComp);
            comp.line = n.line;
            comp.col = n.col;
            comp.children.push_back(std::move(first));
            comp_clauses(comp);
            expect_op("]");
            return done(comp);
        }
        n.children.push_back(std::move(first));
        while (accept_op(",")) {
            if (at_op("]")) break;
            n.children.push_back(star_or_namedexpr());
        }
        expect_op("]");
        return done(n);
    }

    AstNode dict_or_set_atom() {
        AstNode n = make(NodeKind::Dict);
        expect_op("{");
        if (at_op("}")) {
            advance();
            return done(n);  // {} is an empty dict
        }
        if (at_op("**")) {
            advance();
            AstNode item = make(NodeKind::DictItem);
            item.children.push_back(make(NodeKind::Empty));
            item.children.push_back(test());
            n.children.push_back(done(item));
            while (accept_op(",")) {
                if (at_op("}")) break;
                n.children.push_back(dict_item());
            }
            expect_op("}");
            return done(n);
        }
        AstNode first = star_or_namedexpr();
        if (at_op(":")) {
            advance();
            AstNode item = make(NodeKind::DictItem);
            item.line = first.line;
            item.children.push_back(std::move(first));
            item.children.push_back(test());
            done(item);
            if (at_kw("for") || at_kw("async")) {
                AstNode comp = make(NodeKind::DictComp);
                comp.line = n.line;
                comp.col = n.col;
                comp.children.push_back(std::move(item));
                comp_clauses(comp);
                expect_op("}");
                return done(comp);
            }
            n.children.push_back(std::move(item));
            while (accept_op(",")) {
                if (at_op("}")) break;
                n.children.push_back(dict_item());
            }
            expect_op("}");
            return done(n);
        }
        // set display or set comprehension
        if (at_kw("for") || at_kw("async")) {
            AstNode comp = make(NodeKind::SetComp);
            comp.line = n.line;
            comp.col = n.col;
            comp.children.push_back(std::move(first));
            comp_clauses(comp);
            expect_op("}");
            return done(comp);
        }
        n.kind = NodeKind::Set;
        n.children.push_back(std::move(first));
        while (accept_op(",")) {
            if (at_op("}")) break;
            n.children.push_back(star_or_namedexpr());
        }
        expect_op("}");
        return done(n);
    }

    AstNode dict_item() {
        AstNode item = make(NodeKind::DictItem);
        if (at_op("**")) {
            advance();
            item.children.push_back(make(NodeKind::Empty));
            item.children.push_back(test());
            return done(item);
        }
        item.children.push_back(test());
        expect_op(":");
        item.children.push_back(test());
        return done(item);
    }

    LexResult lex_;
    size_t idx_ = 0;
    int last_content_end_line_ = 1;
};

}  // namespace

AstNode parse_python(const std::string& source) {
    Parser p(source);
    return p.parse_module();
}

} // namespace reprokit::py
