// SPDX-License-Identifier: Apache-2.0
#include "reprokit/llm/mock.hpp"

#include "reprokit/errors.hpp"

namespace reprokit {

void MockLlmClient::push(Entry entry) {
    std::lock_guard lock(mutex_);
    script_.push_back(std::move(entry));
}

std::string MockLlmClient::complete(const std::vector<Message>& messages,
                                    const SamplingParams&) {
    std::lock_guard lock(mutex_);
    ++calls_;
    requests_.push_back(messages);
    if (next_ >= script_.size())
        throw LlmError("mock script exhausted after " + std::to_string(calls_) + " calls");
    Entry entry = script_[next_++];
    if (auto* transient = std::get_if<Transient>(&entry)) throw LlmTransient(transient->message);
    if (auto* hard = std::get_if<Hard>(&entry)) throw LlmError(hard->message);
    return std::get<std::string>(entry);
}

int MockLlmClient::calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

size_t MockLlmClient::remaining() const {
    std::lock_guard lock(mutex_);
    return script_.size() - next_;
}

} // namespace reprokit
