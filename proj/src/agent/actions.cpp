// SPDX-License-Identifier: Apache-2.0
#include "reprokit/agent/actions.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

#include <json.hpp>

namespace reprokit {

const std::set<std::string>& paper_actions() {
    static const std::set<std::string> actions = {"SearchPaper", "SearchSection",
                                                  "SearchLiterature"};
    return actions;
}

const std::set<std::string>& code_actions() {
    static const std::set<std::string> actions = {"SearchCode", "SearchFile", "SearchWeb",
                                                  "Compiler"};
    return actions;
}

namespace {

std::string unknown_action(const std::string& name, const std::set<std::string>& allowed) {
    std::vector<std::string> names(allowed.begin(), allowed.end());
    return "unknown action '" + name + "'; available actions: " + join(names, ", ");
}

std::string clip(const std::string& text, size_t limit = 6000) {
    if (text.size() <= limit) return text;
    return text.substr(0, limit) + "\n... (truncated)";
}

std::string search_paper(const Toolbox& tb, const std::string& input) {
    auto findings = query_paper(tb.paper->main(), input, *tb.extraction, tb.retry);
    return findings_to_text(findings);
}

std::string search_section(const Toolbox& tb, const std::string& input) {
    return get_section(tb.paper->main(), trim(input));
}

std::string search_literature(const Toolbox& tb, const std::string& input) {
    // input: {"paper_id": "...", "query": "..."}; a bare id is tolerated
    std::string paper_id, query;
    try {
        auto j = nlohmann::json::parse(input);
        paper_id = j.value("paper_id", "");
        query = j.value("query", "");
    } catch (const nlohmann::json::exception&) {
        paper_id = trim(input);
    }
    if (paper_id.empty())
        return "SearchLiterature needs {\"paper_id\": \"...\", \"query\": \"...\"}";
    return query_literature(*tb.paper, paper_id, query, *tb.fetcher, *tb.extraction, tb.retry);
}

std::string search_code(const Toolbox& tb, const std::string& input) {
    auto defs = lookup_symbol(*tb.index, trim(input));
    if (defs.empty()) return "";  // empty response when the name is absent
    std::string out;
    for (const auto& def : defs) {
        if (!out.empty()) out += "\n";
        out += "# " + def.file + ":" + std::to_string(def.first_line) + " (" + def.qualified +
               ")\n" + def.text;
    }
    return clip(out);
}

std::string search_file(const Toolbox& tb, const std::string& input) {
    return clip(read_repo_file(*tb.index, trim(input)), 20000);
}

std::string do_search_web(const Toolbox& tb, const std::string& input) {
    if (!tb.web_enabled || !tb.web)
        return "SearchWeb is disabled in this run; rely on the paper and repository";
    WebObservation obs = search_web(input, *tb.web, *tb.extraction, 5, tb.retry);
    return obs.filtered_answer;
}

}  // namespace

std::string dispatch_action(const std::string& name, const std::string& input,
                            const Toolbox& toolbox, const std::set<std::string>& allowed) {
    if (!allowed.count(name)) return unknown_action(name, allowed);
    try {
        if (name == "SearchPaper") return search_paper(toolbox, input);
        if (name == "SearchSection") return search_section(toolbox, input);
        if (name == "SearchLiterature") return search_literature(toolbox, input);
        if (name == "SearchCode") return search_code(toolbox, input);
        if (name == "SearchFile") return search_file(toolbox, input);
        if (name == "SearchWeb") return do_search_web(toolbox, input);
        if (name == "Compiler") {
            if (!toolbox.compiler) return "Compiler is not wired for this run";
            return clip(toolbox.compiler(input), 8000);
        }
    } catch (const std::exception& e) {
        return std::string("action failed: ") + e.what();
    }
    return unknown_action(name, allowed);
}

} // namespace reprokit
