// SPDX-License-Identifier: Apache-2.0
#include "reprokit/llm/client.hpp"

#include "reprokit/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace reprokit {

std::string llm_complete(LlmClient& client, const std::vector<Message>& messages,
                         const SamplingParams& params, const RetryPolicy& retry) {
    int backoff_ms = retry.initial_backoff_ms;
    int attempts = std::max(1, retry.max_attempts);
    for (int attempt = 1;; ++attempt) {
        try {
            return client.complete(messages, params);
        } catch (const LlmTransient&) {
            if (attempt >= attempts) throw LlmError("llm call failed after " +
                                                    std::to_string(attempt) + " attempts");
            if (backoff_ms > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms = static_cast<int>(backoff_ms * retry.multiplier);
        }
    }
}

HttpLlmClient::HttpLlmClient(HttpLlmConfig config): config_(std::move(config)) {}

std::string HttpLlmClient::describe() const {
    return "http:" + config_.model;
}

std::string HttpLlmClient::complete(const std::vector<Message>& messages,
                                    const SamplingParams& params) {
    const char* key = nullptr;
    if (config_.require_key) {
        key = std::getenv(config_.api_key_env.c_str());
        if (!key || !*key)
            throw AuthError("credential environment variable " + config_.api_key_env +
                            " is not set");
    }

    nlohmann::json body;
    body["model"] = config_.model;
    body["temperature"] = params.temperature;
    body["top_p"] = params.top_p;
    body["max_tokens"] = params.max_tokens;
    auto& msgs = body["messages"] = nlohmann::json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});

    httplib::Client cli(config_.endpoint);
    cli.set_connection_timeout(config_.timeout_seconds);
    cli.set_read_timeout(config_.timeout_seconds);
    httplib::Headers headers;
    if (key) headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = cli.Post(config_.path, headers, body.dump(), "application/json");
    if (!res)
        throw LlmTransient("llm endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status >= 500)
        throw LlmTransient("llm endpoint returned " + std::to_string(res->status));
    if (res->status == 401 || res->status == 403)
        throw AuthError("llm endpoint rejected credentials (" + std::to_string(res->status) + ")");
    if (res->status != 200)
        throw LlmError("llm endpoint returned " + std::to_string(res->status) + ": " + res->body);

    try {
        auto parsed = nlohmann::json::parse(res->body);
        return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw LlmError(std::string("malformed completion payload: ") + e.what());
    }
}

HttpLlmConfig http_llm_config_from_env() {
    HttpLlmConfig config;
    if (const char* ep = std::getenv("REPROKIT_LLM_ENDPOINT")) config.endpoint = ep;
    if (const char* model = std::getenv("REPROKIT_LLM_MODEL")) config.model = model;
    return config;
}

} // namespace reprokit
