// SPDX-License-Identifier: Apache-2.0
#include "reprokit/paper/context.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/fs.hpp"
#include "reprokit/util/strings.hpp"

namespace reprokit {

std::optional<std::string> DirectoryFetcher::fetch(const std::string& paper_id) {
    // ids like "1706.03762" map directly; path separators are rejected
    if (paper_id.empty() || paper_id.find('/') != std::string::npos ||
        paper_id.find("..") != std::string::npos)
        return std::nullopt;
    fs::path candidate = dir_ / (paper_id + ".tex");
    if (!fs::exists(candidate)) return std::nullopt;
    return read_text_file(candidate);
}

const std::optional<SectionTree>* PaperContext::literature(const std::string& paper_id,
                                                           ArchiveFetcher& fetcher) {
    {
        std::lock_guard lock(mutex_);
        auto it = literature_.find(paper_id);
        if (it != literature_.end()) return &it->second;
    }
    // fetch outside the lock; a duplicate fetch on a race is harmless
    std::optional<std::string> source = fetcher.fetch(paper_id);
    std::optional<SectionTree> tree;
    if (source) tree = parse_latex(*source);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = literature_.emplace(paper_id, std::move(tree));
    return &it->second;
}

size_t PaperContext::literature_cache_size() const {
    std::lock_guard lock(mutex_);
    return literature_.size();
}

PaperContext load_paper_context(const fs::path& dir) {
    fs::path main_tex = dir / "main.tex";
    if (!fs::exists(main_tex)) throw MissingFile(main_tex.string());
    return PaperContext(parse_latex(read_text_file(main_tex)));
}

std::vector<PaperFinding> query_paper(const SectionTree& tree, const std::string& query,
                                      LlmClient& llm, const RetryPolicy& retry) {
    const std::string system =
        "You extract information from one section of a research paper. Given a query and "
        "the section text, reply with the facts relevant to the query, quoting values "
        "exactly. If the section contains nothing relevant, reply with the single word "
        "NONE.";
    std::vector<PaperFinding> findings;
    for (const auto& unit : extraction_units(tree)) {
        std::vector<Message> messages = {
            {"system", system},
            {"user", "Query: " + query + "\n\nSection [" + unit.label + "]:\n" + unit.text},
        };
        std::string answer = trim(llm_complete(llm, messages, {}, retry));
        if (answer.empty() || to_lower(answer) == "none" || to_lower(answer) == "none.")
            continue;
        findings.push_back({unit.label, answer});
    }
    return findings;
}

std::string findings_to_text(const std::vector<PaperFinding>& findings) {
    if (findings.empty()) return "no relevant information found";
    std::string out;
    for (const auto& f : findings) {
        if (!out.empty()) out += "\n";
        out += "[" + f.section_label + "] " + f.text;
    }
    return out;
}

std::string query_literature(PaperContext& ctx, const std::string& paper_id,
                             const std::string& query, ArchiveFetcher& fetcher, LlmClient& llm,
                             const RetryPolicy& retry) {
    const std::optional<SectionTree>* tree = ctx.literature(paper_id, fetcher);
    if (!tree->has_value()) return kNoLiteratureObservation;
    return findings_to_text(query_paper(**tree, query, llm, retry));
}

} // namespace reprokit
