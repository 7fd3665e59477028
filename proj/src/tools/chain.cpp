#include "coach/tools/chain.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "coach/llm/errors.hpp"
#include "coach/llm/gateway.hpp"
#include "coach/tools/schemas.hpp"
#include "coach/util/text.hpp"

namespace coach::tools {

std::string_view to_string(ToolNeedDecision decision) noexcept {
    return decision == ToolNeedDecision::Yes ? "yes" : "no";
}

std::optional<ToolNeedDecision> parse_tool_need(std::string_view text) {
    const auto verdict = util::normalize_verdict(text);
    if (verdict == "yes") return ToolNeedDecision::Yes;
    if (verdict == "no") return ToolNeedDecision::No;
    return std::nullopt;
}

ToolNeedDecision predict_tool_need(std::span<const llm::ChatMessage> history,
                                   dialogue::DialogueStateId state,
                                   mi::InternalStrategy strategy,
                                   const llm::ChatMessage& response,
                                   llm::Provider& provider,
                                   const prompts::ChainOptions& options) {
    if (response.has_tool_calls()) throw std::invalid_argument("predict_tool_need expects a response without tool calls");
    prompts::PromptContext context{.history = history,
                                   .state = state,
                                   .strategy = strategy,
                                   .candidate = &response,
                                   .date_string = options.date_string};
    const auto request =
        prompts::assemble(prompts::Stage::ToolNeedPredict, context, options.prompts(), options.model);
    const auto reply = llm::complete(request, provider);
    if (auto decision = parse_tool_need(reply.content)) return *decision;
    spdlog::warn("tool-need predictor returned '{}'; treating as no", reply.content);
    return ToolNeedDecision::No;
}

std::string reask_instruction(std::string_view reason) {
    return fmt::format("The previous visualize call was rejected ({}). Call visualize again with valid arguments.",
                       reason);
}

std::optional<llm::ToolCall> generate_forced_tool_call(std::span<const llm::ChatMessage> history,
                                                       dialogue::DialogueStateId state,
                                                       mi::InternalStrategy strategy,
                                                       const llm::ChatMessage& response,
                                                       llm::Provider& provider,
                                                       const CallValidator& validator,
                                                       const prompts::ChainOptions& options) {
    prompts::PromptContext context{.history = history,
                                   .state = state,
                                   .strategy = strategy,
                                   .candidate = &response,
                                   .date_string = options.date_string};
    auto request = prompts::assemble(prompts::Stage::ToolCallGenerate, context, options.prompts(), options.model);

    constexpr int kAttempts = 2;
    for (int attempt = 1; attempt <= kAttempts; ++attempt) {
        std::string reason;
        try {
            auto message = llm::complete(request, provider);
            // The gateway guarantees exactly one visualize call here.
            auto call = message.tool_calls.front();
            reason = validator ? validator(call) : std::string{};
            if (reason.empty()) return call;
        } catch (const llm::MalformedToolArgumentsError& e) {
            reason = e.what();
        }
        spdlog::warn("forced visualize attempt {} rejected: {}", attempt, reason);
        if (attempt < kAttempts) request.messages.push_back(llm::ChatMessage::assistant(reask_instruction(reason)));
    }
    spdlog::warn("abandoning data augmentation for this turn");
    return std::nullopt;
}

}  // namespace coach::tools
