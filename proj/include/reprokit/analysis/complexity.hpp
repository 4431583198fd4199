// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/py/ast.hpp"
#include "reprokit/py/token.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace reprokit {

struct ComplexityCounts {
    int var_defs = 0;
    int var_uses = 0;
    int calls = 0;
    int arith_ops = 0;
    int loc = 0;  // non-blank, non-comment lines

    int raw() const { return std::max(1, var_defs + var_uses + calls + arith_ops + loc); }
    bool operator==(const ComplexityCounts&) const = default;
};

// Counts over an inclusive line span of the given source. Arithmetic
// operators are + - * / // % ** @ and unary minus; comparisons and
// boolean/bitwise operators are excluded.
ComplexityCounts complexity_counts(const std::string& source, int first_line, int last_line);

namespace detail {
ComplexityCounts span_counts(const py::AstNode& tree, const std::vector<py::Token>& tokens,
                             int first_line, int last_line);
}

} // namespace reprokit
