// SPDX-License-Identifier: Apache-2.0
#include "reprokit/py/token.hpp"

#include "reprokit/errors.hpp"

#include <array>
#include <cctype>
#include <cstring>
#include <set>
#include <string_view>

namespace reprokit::py {

namespace {

const std::set<std::string>& keyword_set() {
    static const std::set<std::string> kws = {
        "False", "None",   "True",  "and",    "as",     "assert", "async",
        "await", "break",  "class", "continue", "def",  "del",    "elif",
        "else",  "except", "finally", "for",  "from",   "global", "if",
        "import", "in",    "is",    "lambda", "nonlocal", "not",  "or",
        "pass",  "raise",  "return", "try",   "while",  "with",   "yield",
    };
    return kws;
}

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool is_ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool is_string_prefix(std::string_view s) {
    if (s.empty() || s.size() > 3) return false;
    for (char c : s) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (l != 'r' && l != 'b' && l != 'u' && l != 'f') return false;
    }
    return true;
}

// Longest-match operator table.
const std::array<std::string_view, 19> kOps3Plus = {
    "**=", "//=", ">>=", "<<=", "...",
    "**", "//", "<<", ">>", "<=", ">=", "==", "!=", "->", ":=",
    "+=", "-=", "*=", "/=",
};
const std::array<std::string_view, 4> kOps2b = {"%=", "@=", "&=", "|="};
constexpr std::string_view kOps1 = "+-*/%@&|^~<>=()[]{},:.;^";

class Lexer {
public:
    explicit Lexer(const std::string& src): src_(src) {}

    LexResult run() {
        at_line_start_ = true;
        while (true) {
            if (at_line_start_ && depth_ == 0) {
                if (!handle_line_start()) break;  // hit EOF
                at_line_start_ = false;
            }
            if (pos_ >= src_.size()) break;
            skip_spaces();
            if (pos_ >= src_.size()) break;
            char c = src_[pos_];
            if (c == '#') {
                read_comment();
                continue;
            }
            if (c == '\n') {
                consume_newline();
                if (depth_ > 0) continue;  // implicit line joining
                if (line_has_tokens_) {
                    emit(TokenType::Newline, "\n", line_ - 1, 0, line_ - 1);
                    line_has_tokens_ = false;
                }
                at_line_start_ = true;
                continue;
            }
            if (c == '\\' && pos_ + 1 < src_.size() &&
                (src_[pos_ + 1] == '\n' ||
                 (src_[pos_ + 1] == '\r' && pos_ + 2 < src_.size() && src_[pos_ + 2] == '\n'))) {
                pos_ += (src_[pos_ + 1] == '\r') ? 3 : 2;
                ++line_;
                col_ = 0;
                continue;
            }
            read_token();
        }
        if (line_has_tokens_) {
            emit(TokenType::Newline, "\n", line_, col_, line_);
            line_has_tokens_ = false;
        }
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit(TokenType::Dedent, "", line_, 0, line_);
        }
        emit(TokenType::End, "", line_, col_, line_);
        return std::move(out_);
    }

private:
    // Consumes blank and comment-only physical lines, then settles the
    // indentation level of the next code line. Returns false at EOF.
    bool handle_line_start() {
        while (true) {
            if (pos_ >= src_.size()) return false;
            size_t probe = pos_;
            int indent = 0;
            while (probe < src_.size() && (src_[probe] == ' ' || src_[probe] == '\t' ||
                                           src_[probe] == '\f' || src_[probe] == '\r')) {
                if (src_[probe] == ' ')
                    indent += 1;
                else if (src_[probe] == '\t')
                    indent = (indent / 8 + 1) * 8;
                ++probe;
            }
            if (probe >= src_.size()) {
                pos_ = probe;
                return false;
            }
            char c = src_[probe];
            if (c == '\n') {  // blank line
                pos_ = probe + 1;
                ++line_;
                col_ = 0;
                continue;
            }
            if (c == '#') {  // comment-only line
                size_t eol = src_.find('\n', probe);
                std::string text = src_.substr(
                    probe + 1, (eol == std::string::npos ? src_.size() : eol) - probe - 1);
                out_.comments.push_back(
                    {line_, static_cast<int>(probe - pos_), std::move(text), true});
                if (eol == std::string::npos) {
                    pos_ = src_.size();
                    return false;
                }
                pos_ = eol + 1;
                ++line_;
                col_ = 0;
                continue;
            }
            // Code line: settle indentation.
            col_ = static_cast<int>(probe - pos_);
            pos_ = probe;
            if (indent > indents_.back()) {
                indents_.push_back(indent);
                emit(TokenType::Indent, "", line_, 0, line_);
            } else {
                while (indent < indents_.back()) {
                    indents_.pop_back();
                    emit(TokenType::Dedent, "", line_, 0, line_);
                }
                if (indent != indents_.back())
                    throw ParseError("unindent does not match any outer indentation level",
                                     line_, col_);
            }
            return true;
        }
    }

    void skip_spaces() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\f' ||
                src_[pos_] == '\r')) {
            ++pos_;
            ++col_;
        }
    }

    void consume_newline() {
        ++pos_;
        ++line_;
        col_ = 0;
    }

    void read_comment() {
        size_t eol = src_.find('\n', pos_);
        std::string text =
            src_.substr(pos_ + 1, (eol == std::string::npos ? src_.size() : eol) - pos_ - 1);
        out_.comments.push_back({line_, col_, std::move(text), !line_has_tokens_});
        pos_ = (eol == std::string::npos) ? src_.size() : eol;
        // the '\n' itself is handled by the main loop
    }

    void read_token() {
        unsigned char c = static_cast<unsigned char>(src_[pos_]);
        if (is_ident_start(c)) {
            read_name_or_prefixed_string();
        } else if (std::isdigit(c) ||
                   (c == '.' && pos_ + 1 < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            read_number();
        } else if (c == '"' || c == '\'') {
            read_string(pos_, false);
        } else {
            read_op();
        }
        line_has_tokens_ = true;
    }

    void read_name_or_prefixed_string() {
        size_t start = pos_;
        int scol = col_;
        while (pos_ < src_.size() && is_ident_cont(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
            ++col_;
        }
        std::string_view word(src_.data() + start, pos_ - start);
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') &&
            is_string_prefix(word)) {
            bool raw = word.find('r') != std::string_view::npos ||
                       word.find('R') != std::string_view::npos;
            pos_ = start;
            col_ = scol;
            read_string(start + word.size(), raw);
            return;
        }
        emit(TokenType::Name, std::string(word), line_, scol, line_);
    }

    void read_number() {
        size_t start = pos_;
        int scol = col_;
        auto take_while = [&](auto pred) {
            while (pos_ < src_.size() && pred(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++col_;
            }
        };
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
            std::strchr("xXoObB", src_[pos_ + 1])) {
            pos_ += 2;
            col_ += 2;
            take_while([](unsigned char u) { return std::isalnum(u) || u == '_'; });
        } else {
            take_while([](unsigned char u) { return std::isdigit(u) || u == '_'; });
            if (pos_ < src_.size() && src_[pos_] == '.') {
                ++pos_;
                ++col_;
                take_while([](unsigned char u) { return std::isdigit(u) || u == '_'; });
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t save = pos_;
                int savec = col_;
                ++pos_;
                ++col_;
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                    ++pos_;
                    ++col_;
                }
                if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    take_while([](unsigned char u) { return std::isdigit(u) || u == '_'; });
                } else {
                    pos_ = save;
                    col_ = savec;
                }
            }
            if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) {
                ++pos_;
                ++col_;
            }
        }
        emit(TokenType::Number, src_.substr(start, pos_ - start), line_, scol, line_);
    }

    // `quote_at` points at the opening quote; pos_ at the literal start
    // (prefix included in the token text).
    void read_string(size_t quote_at, bool raw) {
        (void)raw;  // raw only affects value decoding, not termination scanning
        size_t start = pos_;
        int scol = col_;
        int sline = line_;
        char q = src_[quote_at];
        bool triple = quote_at + 2 < src_.size() && src_[quote_at + 1] == q &&
                      src_[quote_at + 2] == q;
        size_t i = quote_at + (triple ? 3 : 1);
        while (true) {
            if (i >= src_.size())
                throw ParseError("unterminated string literal", sline, scol);
            char c = src_[i];
            if (c == '\\') {
                if (i + 1 < src_.size() && src_[i + 1] == '\n') ++line_;
                i += 2;
                continue;
            }
            if (c == '\n') {
                if (!triple)
                    throw ParseError("end of line inside single-quoted string", sline, scol);
                ++line_;
                ++i;
                continue;
            }
            if (c == q) {
                if (!triple) {
                    ++i;
                    break;
                }
                if (i + 2 < src_.size() && src_[i + 1] == q && src_[i + 2] == q) {
                    i += 3;
                    break;
                }
                ++i;
                continue;
            }
            ++i;
        }
        std::string text = src_.substr(start, i - start);
        pos_ = i;
        // column tracking across strings only matters on the final line
        size_t last_nl = text.rfind('\n');
        if (last_nl == std::string::npos)
            col_ = scol + static_cast<int>(text.size());
        else
            col_ = static_cast<int>(text.size() - last_nl - 1);
        Token t{TokenType::Str, std::move(text), sline, scol, line_};
        out_.tokens.push_back(std::move(t));
    }

    void read_op() {
        std::string_view rest(src_.data() + pos_, src_.size() - pos_);
        for (auto op : kOps3Plus) {
            if (rest.substr(0, op.size()) == op) {
                emit_op(op);
                return;
            }
        }
        for (auto op : kOps2b) {
            if (rest.substr(0, op.size()) == op) {
                emit_op(op);
                return;
            }
        }
        char c = rest[0];
        if (kOps1.find(c) != std::string_view::npos) {
            if (c == '(' || c == '[' || c == '{') ++depth_;
            if (c == ')' || c == ']' || c == '}') depth_ = depth_ > 0 ? depth_ - 1 : 0;
            emit_op(std::string_view(&src_[pos_], 1));
            return;
        }
        throw ParseError(std::string("invalid character '") + c + "'", line_, col_);
    }

    void emit_op(std::string_view op) {
        emit(TokenType::Op, std::string(op), line_, col_, line_);
        pos_ += op.size();
        col_ += static_cast<int>(op.size());
    }

    void emit(TokenType type, std::string text, int line, int col, int end_line) {
        out_.tokens.push_back({type, std::move(text), line, col, end_line});
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 0;
    int depth_ = 0;
    bool line_has_tokens_ = false;
    bool at_line_start_ = true;
    std::vector<int> indents_{0};
    LexResult out_;
};

}  // namespace

LexResult lex_python(const std::string& source) {
    return Lexer(source).run();
}

bool is_python_keyword(const std::string& word) {
    return keyword_set().count(word) > 0;
}

std::vector<std::string> lenient_tokens(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    const size_t n = text.size();
    auto string_end = [&](size_t at) -> size_t {
        char q = text[at];
        bool triple = at + 2 < n && text[at + 1] == q && text[at + 2] == q;
        size_t j = at + (triple ? 3 : 1);
        while (j < n) {
            if (text[j] == '\\') {
                j += 2;
                continue;
            }
            if (!triple && (text[j] == '\n' || text[j] == q)) return j + (text[j] == q ? 1 : 0);
            if (triple && text[j] == q && j + 2 < n + 1 && j + 1 < n && text[j + 1] == q &&
                j + 2 < n && text[j + 2] == q)
                return j + 3;
            ++j;
        }
        return n;
    };
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '#') {
            size_t eol = text.find('\n', i);
            i = (eol == std::string::npos) ? n : eol;
            continue;
        }
        if (is_ident_start(c)) {
            size_t b = i;
            while (i < n && is_ident_cont(static_cast<unsigned char>(text[i]))) ++i;
            std::string word = text.substr(b, i - b);
            if (i < n && (text[i] == '"' || text[i] == '\'') && is_string_prefix(word)) {
                size_t e = string_end(i);
                out.push_back(word + text.substr(i, e - i));
                i = e;
            } else {
                out.push_back(std::move(word));
            }
            continue;
        }
        if (c == '"' || c == '\'') {
            size_t e = string_end(i);
            out.push_back(text.substr(i, e - i));
            i = e;
            continue;
        }
        if (std::isdigit(c)) {
            size_t b = i;
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                             text[i] == '_' || text[i] == '.'))
                ++i;
            out.push_back(text.substr(b, i - b));
            continue;
        }
        std::string_view rest(text.data() + i, n - i);
        bool matched = false;
        for (auto op : kOps3Plus) {
            if (rest.substr(0, op.size()) == op) {
                out.emplace_back(op);
                i += op.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (auto op : kOps2b) {
            if (rest.substr(0, op.size()) == op) {
                out.emplace_back(op);
                i += op.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        out.push_back(text.substr(i, 1));
        ++i;
    }
    return out;
}

} // namespace reprokit::py
