// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "reprokit/llm/client.hpp"

#include <mutex>
#include <variant>
#include <vector>

namespace reprokit {

// Scripted backend: replays responses keyed by request ordinal. An entry may
// instead inject a transient failure (to exercise the retry path) or a hard
// failure. Exhausting the script is an LlmError.
class MockLlmClient : public LlmClient {
public:
    struct Transient {
        std::string message = "injected transient failure";
    };
    struct Hard {
        std::string message = "injected failure";
    };
    using Entry = std::variant<std::string, Transient, Hard>;

    MockLlmClient() = default;
    explicit MockLlmClient(std::vector<Entry> script): script_(std::move(script)) {}

    void push(Entry entry);
    std::string complete(const std::vector<Message>& messages,
                         const SamplingParams& params) override;
    std::string describe() const override { return "mock"; }

    int calls() const;
    size_t remaining() const;
    const std::vector<std::vector<Message>>& requests() const { return requests_; }

private:
    mutable std::mutex mutex_;
    std::vector<Entry> script_;
    size_t next_ = 0;
    int calls_ = 0;
    std::vector<std::vector<Message>> requests_;
};

} // namespace reprokit
