// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace reprokit::py {

enum class TokenType { Name, Number, Str, Op, Newline, Indent, Dedent, End };

struct Token {
    TokenType type = TokenType::End;
    std::string text;
    int line = 1;      // 1-based
    int col = 0;       // 0-based byte offset within the line
    int end_line = 1;  // differs from line only for multi-line strings
};

// Comments ride a side channel; the parser never sees them but the
// segment extractor reads them (markers inside string literals are
// therefore never mistaken for boundaries).
struct Comment {
    int line = 0;
    int col = 0;
    std::string text;      // everything after '#'
    bool own_line = false; // no code tokens precede it on the line
};

struct LexResult {
    std::vector<Token> tokens;
    std::vector<Comment> comments;
};

// Full tokenization with INDENT/DEDENT; throws ParseError.
LexResult lex_python(const std::string& source);

// Best-effort token texts for arbitrary text: never throws, no layout
// tokens. Used by the n-gram metric components.
std::vector<std::string> lenient_tokens(const std::string& text);

// Python 3 reserved words.
bool is_python_keyword(const std::string& word);

} // namespace reprokit::py
