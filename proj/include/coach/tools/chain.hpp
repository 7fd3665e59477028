#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "coach/dialogue/state.hpp"
#include "coach/llm/chat.hpp"
#include "coach/llm/provider.hpp"
#include "coach/mi/strategy.hpp"
#include "coach/prompts/assemble.hpp"
#include "coach/tools/validate.hpp"

namespace coach::tools {

enum class ToolNeedDecision { Yes, No };

std::string_view to_string(ToolNeedDecision decision) noexcept;
std::optional<ToolNeedDecision> parse_tool_need(std::string_view text);

/// Asks whether `response` should be augmented with health data.
/// Unparseable output is logged and treated as No.
ToolNeedDecision predict_tool_need(std::span<const llm::ChatMessage> history,
                                   dialogue::DialogueStateId state,
                                   mi::InternalStrategy strategy,
                                   const llm::ChatMessage& response,
                                   llm::Provider& provider,
                                   const prompts::ChainOptions& options = {});

/// Returns "" for valid arguments, otherwise the reason.
using CallValidator = std::function<std::string(const llm::ToolCall&)>;

/// Requests a visualize call. Malformed or invalid arguments get one re-ask
/// carrying the reason; a second failure returns nullopt (logged).
/// ContractViolationError from the gateway propagates.
std::optional<llm::ToolCall> generate_forced_tool_call(std::span<const llm::ChatMessage> history,
                                                       dialogue::DialogueStateId state,
                                                       mi::InternalStrategy strategy,
                                                       const llm::ChatMessage& response,
                                                       llm::Provider& provider,
                                                       const CallValidator& validator,
                                                       const prompts::ChainOptions& options = {});

/// The instruction appended for the re-ask.
std::string reask_instruction(std::string_view reason);

}  // namespace coach::tools
