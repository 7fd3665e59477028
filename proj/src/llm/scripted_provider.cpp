#include "coach/llm/scripted_provider.hpp"

#include <fmt/format.h>

#include "coach/llm/errors.hpp"

namespace coach::llm {

ScriptedProvider& ScriptedProvider::enqueue(const std::string& stage, ProviderReply reply) {
    std::lock_guard lock(mutex_);
    queues_[stage].push_back(std::move(reply));
    return *this;
}

ScriptedProvider& ScriptedProvider::on(const std::string& stage, Handler handler) {
    std::lock_guard lock(mutex_);
    handlers_[stage] = std::move(handler);
    return *this;
}

ScriptedProvider& ScriptedProvider::fallback(Handler handler) {
    std::lock_guard lock(mutex_);
    fallback_ = std::move(handler);
    return *this;
}

ProviderReply ScriptedProvider::send(const CompletionRequest& request) {
    Handler handler;
    {
        std::lock_guard lock(mutex_);
        log_.push_back(request);
        if (auto q = queues_.find(request.stage); q != queues_.end() && !q->second.empty()) {
            auto reply = std::move(q->second.front());
            q->second.pop_front();
            return reply;
        }
        if (auto h = handlers_.find(request.stage); h != handlers_.end()) {
            handler = h->second;
        } else {
            handler = fallback_;
        }
    }
    // Handlers run unlocked so they may block or re-enter.
    if (!handler) throw LlmError(fmt::format("no scripted reply for stage '{}'", request.stage));
    return handler(request);
}

std::vector<CompletionRequest> ScriptedProvider::requests() const {
    std::lock_guard lock(mutex_);
    return log_;
}

std::size_t ScriptedProvider::request_count() const {
    std::lock_guard lock(mutex_);
    return log_.size();
}

void ScriptedProvider::clear_log() {
    std::lock_guard lock(mutex_);
    log_.clear();
}

}  // namespace coach::llm
