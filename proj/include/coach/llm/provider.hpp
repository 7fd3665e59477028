#pragma once

#include <string>

#include "coach/llm/chat.hpp"

namespace coach::llm {

/// A chat-completion backend. Implementations must tolerate concurrent
/// calls to send().
class Provider {
public:
    virtual ~Provider() = default;

    virtual ProviderReply send(const CompletionRequest& request) = 0;
    /// Short label recorded in evaluation manifests, e.g. "replay:<hash>".
    virtual std::string label() const = 0;
};

}  // namespace coach::llm
