// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/llm/client.hpp"

#include <string>
#include <vector>

namespace reprokit {

struct SearchHit {
    std::string url;
    std::string snippet;
};

struct WebObservation {
    std::string query;
    std::vector<SearchHit> results;
    std::string filtered_answer;  // derived only from `results`
};

// Search backend contract: query in, ranked hits out. Throws
// BackendUnavailable when the service cannot be reached.
class SearchBackend {
public:
    virtual ~SearchBackend() = default;
    virtual std::vector<SearchHit> search(const std::string& query, int k) = 0;
};

// Canned hits plus a call counter, so tests can assert that a disabled
// SearchWeb performs no backend activity.
class StubSearchBackend : public SearchBackend {
public:
    explicit StubSearchBackend(std::vector<SearchHit> hits): hits_(std::move(hits)) {}
    std::vector<SearchHit> search(const std::string&, int k) override;
    int calls() const { return calls_; }

private:
    std::vector<SearchHit> hits_;
    int calls_ = 0;
};

class OfflineSearchBackend : public SearchBackend {
public:
    std::vector<SearchHit> search(const std::string&, int) override;
};

// Top-k hits are handed with the query to the extraction model; its
// distilled answer is the observation. Backend failures degrade to an
// explicit offline observation so the agent loop continues.
WebObservation search_web(const std::string& query, SearchBackend& backend, LlmClient& llm,
                          int k = 5, const RetryPolicy& retry = {});

} // namespace reprokit
