// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace reprokit {

struct Message {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;
};

// Evaluation-mode defaults: temperature 0 and top-p 1.
struct SamplingParams {
    double temperature = 0.0;
    double top_p = 1.0;
    int max_tokens = 4096;
};

struct RetryPolicy {
    int max_attempts = 3;
    int initial_backoff_ms = 250;
    double multiplier = 2.0;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;
    // One completion for a role-tagged message list. Throws LlmTransient for
    // retryable conditions, AuthError / LlmError otherwise.
    virtual std::string complete(const std::vector<Message>& messages,
                                 const SamplingParams& params) = 0;
    virtual std::string describe() const { return "llm"; }
};

// Retries transient failures with bounded exponential backoff; rethrows
// LlmError once attempts are exhausted.
std::string llm_complete(LlmClient& client, const std::vector<Message>& messages,
                         const SamplingParams& params = {},
                         const RetryPolicy& retry = {});

// OpenAI-style chat-completions backend over HTTP. Endpoint, model and
// credentials come from the config; the API key is read from the named
// environment variable and checked before any network call.
struct HttpLlmConfig {
    std::string endpoint;  // e.g. "http://localhost:8000"
    std::string model;
    std::string path = "/v1/chat/completions";
    std::string api_key_env = "REPROKIT_LLM_API_KEY";
    bool require_key = true;
    int timeout_seconds = 120;
};

class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(HttpLlmConfig config);
    std::string complete(const std::vector<Message>& messages,
                         const SamplingParams& params) override;
    std::string describe() const override;

private:
    HttpLlmConfig config_;
};

// Reads REPROKIT_LLM_ENDPOINT / REPROKIT_LLM_MODEL.
HttpLlmConfig http_llm_config_from_env();

} // namespace reprokit
