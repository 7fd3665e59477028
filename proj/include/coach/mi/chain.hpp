#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "coach/dialogue/state.hpp"
#include "coach/llm/chat.hpp"
#include "coach/llm/provider.hpp"
#include "coach/mi/strategy.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::mi {

inline constexpr InternalStrategy kFallbackStrategy = InternalStrategy::Question;

struct GroundedResponse {
    InternalStrategy strategy;
    llm::ChatMessage message;
};

/// Strategy name from a model reply, tolerating a "Strategy:" label and
/// surrounding quotes or punctuation.
std::optional<InternalStrategy> parse_strategy_output(std::string_view text);

/// Unrecognized output is logged and falls back to Question.
InternalStrategy predict_strategy(std::span<const llm::ChatMessage> history,
                                  dialogue::DialogueStateId state,
                                  llm::Provider& provider,
                                  const prompts::ChainOptions& options = {});

/// Generates the coach reply conditioned on `strategy`, with the health-data
/// tools attached. The message may carry tool calls.
GroundedResponse generate_response(std::span<const llm::ChatMessage> history,
                                   dialogue::DialogueStateId state,
                                   InternalStrategy strategy,
                                   llm::Provider& provider,
                                   const prompts::ChainOptions& options = {});

}  // namespace coach::mi
