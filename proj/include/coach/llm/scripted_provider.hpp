#pragma once

#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "coach/llm/provider.hpp"

namespace coach::llm {

/// Programmable provider for tests and offline demos. For each request the
/// reply comes from, in order: the queue for the request's stage, the
/// handler for that stage, the fallback handler. Every request is logged.
class ScriptedProvider : public Provider {
public:
    using Handler = std::function<ProviderReply(const CompletionRequest&)>;

    ScriptedProvider() = default;
    explicit ScriptedProvider(Handler fallback) : fallback_(std::move(fallback)) {}

    ScriptedProvider& enqueue(const std::string& stage, ProviderReply reply);
    ScriptedProvider& on(const std::string& stage, Handler handler);
    ScriptedProvider& fallback(Handler handler);

    ProviderReply send(const CompletionRequest& request) override;
    std::string label() const override { return "scripted"; }

    std::vector<CompletionRequest> requests() const;
    std::size_t request_count() const;
    void clear_log();

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::deque<ProviderReply>> queues_;
    std::map<std::string, Handler> handlers_;
    Handler fallback_;
    std::vector<CompletionRequest> log_;
};

}  // namespace coach::llm
