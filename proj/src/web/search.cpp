// SPDX-License-Identifier: Apache-2.0
#include "reprokit/web/search.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/util/strings.hpp"

namespace reprokit {

std::vector<SearchHit> StubSearchBackend::search(const std::string&, int k) {
    ++calls_;
    std::vector<SearchHit> out = hits_;
    if (static_cast<int>(out.size()) > k) out.resize(static_cast<size_t>(k));
    return out;
}

std::vector<SearchHit> OfflineSearchBackend::search(const std::string&, int) {
    throw BackendUnavailable("web search backend is not configured");
}

WebObservation search_web(const std::string& query, SearchBackend& backend, LlmClient& llm,
                          int k, const RetryPolicy& retry) {
    WebObservation obs;
    obs.query = query;
    try {
        obs.results = backend.search(query, k);
    } catch (const BackendUnavailable& e) {
        obs.filtered_answer = std::string("web search is offline: ") + e.what();
        return obs;
    }
    if (obs.results.empty()) {
        obs.filtered_answer = "no results";
        return obs;
    }
    std::string corpus;
    for (size_t i = 0; i < obs.results.size(); ++i)
        corpus += std::to_string(i + 1) + ". " + obs.results[i].url + "\n" +
                  obs.results[i].snippet + "\n";
    std::vector<Message> messages = {
        {"system",
         "You distill web search results. Given a query and numbered results, answer the "
         "query using only the results' content. Reply NONE if they do not answer it."},
        {"user", "Query: " + query + "\n\nResults:\n" + corpus},
    };
    std::string answer = trim(llm_complete(llm, messages, {}, retry));
    obs.filtered_answer = (answer.empty() || to_lower(answer) == "none") ? "no results" : answer;
    return obs;
}

} // namespace reprokit
