// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/bundle/task_bundle.hpp"
#include "reprokit/index/code_index.hpp"

#include <optional>
#include <set>
#include <string>

namespace reprokit {

// Qualified names the generated code actually references, partitioned by
// origin. Aliases are normalized through import statements, so
// `import numpy as np; np.exp(x)` records external_api "numpy.exp".
struct DependencyUsage {
    std::set<std::string> intra_file;
    std::set<std::string> cross_file;
    std::set<std::string> external_api;
};

// Resolves every referenced name through the generated code's own imports,
// the target file's import table, and the repository index. Locally bound
// and unresolvable bare names are ignored. Throws ParseError when the
// generated text does not parse.
DependencyUsage extract_dependencies(const std::string& generated, const TaskBundle& bundle,
                                     const CodeIndex& index);

struct RecallScores {
    std::optional<double> intra;
    std::optional<double> cross;
    std::optional<double> api;
};

// Per category |annotated ∩ used| / |annotated|; absent when the annotated
// set is empty (0/0 recall is undefined and excluded from aggregation).
RecallScores recall(const DependencyUsage& used, const DependencyAnnotation& annotated);

} // namespace reprokit
