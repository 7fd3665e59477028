#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "coach/dialogue/state.hpp"
#include "coach/llm/chat.hpp"
#include "coach/llm/provider.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::dialogue {

/// "continue" / "completed" after normalization; nullopt otherwise.
std::optional<AdvanceDecision> parse_advance_verdict(std::string_view text);

/// Asks whether the current state's task is done. An unparseable verdict
/// is logged and treated as Continue. Throws std::invalid_argument unless
/// `history` ends with a user message.
AdvanceDecision classify_advance(std::span<const llm::ChatMessage> history,
                                 DialogueStateId state,
                                 llm::Provider& provider,
                                 const prompts::ChainOptions& options = {});

/// The state after a Completed verdict.
constexpr DialogueStateId advance(DialogueStateId state) noexcept { return successor(state); }

/// Applies a verdict: successor on Completed, unchanged on Continue.
constexpr DialogueStateId apply(DialogueStateId state, AdvanceDecision decision) noexcept {
    return decision == AdvanceDecision::Completed ? advance(state) : state;
}

}  // namespace coach::dialogue
