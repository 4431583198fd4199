// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/llm/client.hpp"
#include "reprokit/paper/latex.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace reprokit {

namespace fs = std::filesystem;

// Archive fetcher contract: paper-id in, LaTeX text or unavailable out.
class ArchiveFetcher {
public:
    virtual ~ArchiveFetcher() = default;
    virtual std::optional<std::string> fetch(const std::string& paper_id) = 0;
};

// Offline fetcher over a directory of <paper-id>.tex files; doubles as the
// cache directory in bundles (paper/literature/).
class DirectoryFetcher : public ArchiveFetcher {
public:
    explicit DirectoryFetcher(fs::path dir): dir_(std::move(dir)) {}
    std::optional<std::string> fetch(const std::string& paper_id) override;

private:
    fs::path dir_;
};

class NullFetcher : public ArchiveFetcher {
public:
    std::optional<std::string> fetch(const std::string&) override { return std::nullopt; }
};

struct PaperFinding {
    std::string section_label;
    std::string text;
};

// Target paper plus an on-demand cache of cited papers. Section trees are
// immutable; the literature cache is guarded for concurrent readers.
class PaperContext {
public:
    explicit PaperContext(SectionTree main): main_(std::move(main)) {}

    const SectionTree& main() const { return main_; }

    // Returns the cached tree for a paper id, fetching (and caching the
    // negative result) on first use.
    const std::optional<SectionTree>* literature(const std::string& paper_id,
                                                 ArchiveFetcher& fetcher);

    size_t literature_cache_size() const;

private:
    SectionTree main_;
    mutable std::mutex mutex_;
    std::map<std::string, std::optional<SectionTree>> literature_;
};

// Loads <dir>/main.tex as the target paper.
PaperContext load_paper_context(const fs::path& dir);

// Feeds each extraction unit (subsection granularity) together with the
// query to the extraction model; non-empty answers come back with section
// provenance. An empty result is a valid outcome. Throws LlmError once the
// client's retries are exhausted.
std::vector<PaperFinding> query_paper(const SectionTree& tree, const std::string& query,
                                      LlmClient& llm, const RetryPolicy& retry = {});

std::string findings_to_text(const std::vector<PaperFinding>& findings);

// SearchLiterature: fetch (cached), then query. An unavailable source yields
// the explicit no-information observation rather than an error.
std::string query_literature(PaperContext& ctx, const std::string& paper_id,
                             const std::string& query, ArchiveFetcher& fetcher, LlmClient& llm,
                             const RetryPolicy& retry = {});

inline constexpr const char* kNoLiteratureObservation =
    "no information: the LaTeX source for this paper id is unavailable";

} // namespace reprokit
