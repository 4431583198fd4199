// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/index/code_index.hpp"
#include "reprokit/llm/client.hpp"
#include "reprokit/paper/context.hpp"
#include "reprokit/web/search.hpp"

#include <functional>
#include <set>
#include <string>

namespace reprokit {

// The seven actions. Paper side: SearchPaper, SearchSection,
// SearchLiterature. Code side: SearchCode, SearchFile, SearchWeb, Compiler.
const std::set<std::string>& paper_actions();
const std::set<std::string>& code_actions();

// Shared, read-only wiring for dispatch. The compiler callback materializes
// the given code into a scratch workspace and returns the captured output.
struct Toolbox {
    PaperContext* paper = nullptr;
    ArchiveFetcher* fetcher = nullptr;
    const CodeIndex* index = nullptr;
    SearchBackend* web = nullptr;
    bool web_enabled = false;
    LlmClient* extraction = nullptr;  // backs SearchPaper/SearchLiterature/SearchWeb
    std::function<std::string(const std::string& code)> compiler;
    RetryPolicy retry;
};

// Routes one action to its tool and stringifies the result. Failures never
// escape: unknown or disallowed names and tool errors all come back as
// observations so the loop can continue.
std::string dispatch_action(const std::string& name, const std::string& input,
                            const Toolbox& toolbox, const std::set<std::string>& allowed);

} // namespace reprokit
