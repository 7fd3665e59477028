#include "coach/llm/live_provider.hpp"

#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "coach/llm/errors.hpp"

namespace coach::llm {

namespace {

bool is_transient(int status) { return status == 429 || status >= 500; }

}  // namespace

nlohmann::json to_openai_request(const CompletionRequest& request) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : request.messages) {
        nlohmann::json out{{"role", to_string(m.role)}, {"content", m.content}};
        if (m.has_tool_calls()) {
            nlohmann::json calls = nlohmann::json::array();
            for (const auto& call : m.tool_calls) {
                calls.push_back({{"id", call.id},
                                 {"type", "function"},
                                 {"function", {{"name", call.name}, {"arguments", nlohmann::json(call.arguments).dump()}}}});
            }
            out["tool_calls"] = std::move(calls);
            if (m.content.empty()) out["content"] = nullptr;
        }
        if (m.tool_call_id) out["tool_call_id"] = *m.tool_call_id;
        messages.push_back(std::move(out));
    }

    nlohmann::json body{{"model", request.model_id}, {"temperature", request.temperature}, {"messages", messages}};
    if (!request.tools.empty()) {
        nlohmann::json tools = nlohmann::json::array();
        for (const auto& t : request.tools) {
            tools.push_back({{"type", "function"},
                             {"function", {{"name", t.name}, {"description", t.description}, {"parameters", t.parameters}}}});
        }
        body["tools"] = std::move(tools);
    }
    if (request.forced_tool) {
        body["tool_choice"] = {{"type", "function"}, {"function", {{"name", *request.forced_tool}}}};
    }
    return body;
}

ProviderReply from_openai_response(const nlohmann::json& response) {
    const auto& choices = response.at("choices");
    if (choices.empty()) throw LlmError("chat completion returned no choices");
    const auto& message = choices.at(0).at("message");

    ProviderReply reply;
    if (const auto c = message.find("content"); c != message.end() && c->is_string()) reply.content = c->get<std::string>();
    for (const auto& call : message.value("tool_calls", nlohmann::json::array())) {
        const auto& fn = call.at("function");
        reply.tool_calls.push_back({call.value("id", ""), fn.at("name").get<std::string>(), fn.value("arguments", "")});
    }
    return reply;
}

LiveProvider::LiveProvider(LiveProviderOptions options) : options_(std::move(options)) {
    if (const char* key = std::getenv(options_.api_key_env.c_str())) api_key_ = key;
    if (options_.max_attempts < 1) options_.max_attempts = 1;
}

ProviderReply LiveProvider::send(const CompletionRequest& request) {
    if (api_key_.empty()) {
        throw TransportError(fmt::format("no API key: set {}", options_.api_key_env));
    }
    const auto body = to_openai_request(request).dump();
    auto backoff = options_.initial_backoff;
    std::string last_error;

    for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
        httplib::Client client(options_.base_url);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_bearer_token_auth(api_key_);

        auto result = client.Post(options_.path, body, "application/json");
        if (result && result->status == 200) {
            try {
                return from_openai_response(nlohmann::json::parse(result->body));
            } catch (const nlohmann::json::exception& e) {
                throw LlmError(fmt::format("unparseable chat completion response: {}", e.what()));
            }
        }
        if (result && !is_transient(result->status)) {
            throw TransportError(fmt::format("chat completion failed with HTTP {}: {}", result->status, result->body));
        }
        last_error = result ? fmt::format("HTTP {}", result->status) : httplib::to_string(result.error());
        spdlog::warn("chat completion attempt {}/{} failed: {}", attempt, options_.max_attempts, last_error);
        if (attempt < options_.max_attempts) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
    }
    throw TransportError(fmt::format("chat completion failed after {} attempts: {}", options_.max_attempts, last_error));
}

}  // namespace coach::llm
