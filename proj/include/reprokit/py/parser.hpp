// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/py/ast.hpp"
#include "reprokit/py/token.hpp"

#include <string>

namespace reprokit::py {

// Parses Python 3 source into a Module tree. Grammar coverage is the
// 3.8-era language plus walrus; `match` statements are not supported.
// Throws ParseError with the offending position.
AstNode parse_python(const std::string& source);

} // namespace reprokit::py
