#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "coach/llm/provider.hpp"

namespace coach::llm {

struct LiveProviderOptions {
    /// Scheme, host and optional port, e.g. "https://api.openai.com".
    std::string base_url = "https://api.openai.com";
    std::string path = "/v1/chat/completions";
    /// Name of the environment variable holding the API key.
    std::string api_key_env = "OPENAI_API_KEY";
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::seconds timeout{120};
};

/// Chat-completions client for OpenAI-compatible HTTP APIs. Connection
/// failures, 429 and 5xx responses are retried with exponential backoff.
class LiveProvider : public Provider {
public:
    explicit LiveProvider(LiveProviderOptions options = {});

    ProviderReply send(const CompletionRequest& request) override;
    std::string label() const override { return "live:" + options_.base_url; }

private:
    LiveProviderOptions options_;
    std::string api_key_;
};

nlohmann::json to_openai_request(const CompletionRequest& request);
ProviderReply from_openai_response(const nlohmann::json& response);

}  // namespace coach::llm
