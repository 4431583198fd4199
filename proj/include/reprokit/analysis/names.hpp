// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/py/ast.hpp"

#include <string>
#include <vector>

namespace reprokit {

enum class NameEventKind {
    Def,  // binding: assignment, loop/with target, parameter, import, def/class name
    Use,  // read of a name
    Mod,  // in-place modification: attribute/subscript write, augmented target, del
};

struct NameEvent {
    std::string name;
    int line = 0;
    NameEventKind kind = NameEventKind::Use;
};

// Def/use/mod events in execution-ish order (values before targets).
// Nested scopes (lambdas, inner defs, comprehensions) are walked textually:
// their bindings and reads count at the lines where they appear. Type
// annotations are skipped; default values are reads.
std::vector<NameEvent> collect_name_events(const py::AstNode& node);

} // namespace reprokit
