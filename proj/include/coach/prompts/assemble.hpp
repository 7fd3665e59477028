#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <absl/time/civil_time.h>

#include "coach/dialogue/state.hpp"
#include "coach/llm/chat.hpp"
#include "coach/mi/strategy.hpp"
#include "coach/prompts/catalog.hpp"

namespace coach::prompts {

enum class Stage { StateClassify, StrategyPredict, ResponseGenerate, ToolNeedPredict, ToolCallGenerate };

/// Stage labels carried on CompletionRequest::stage.
std::string_view to_string(Stage stage) noexcept;
inline constexpr std::string_view kBaselineStage = "baseline";
inline constexpr std::string_view kMiCodeStage = "mi_code";

struct PromptContext {
    std::span<const llm::ChatMessage> history;
    dialogue::DialogueStateId state = dialogue::DialogueStateId::Onboarding;
    /// Required by ResponseGenerate, ToolNeedPredict and ToolCallGenerate.
    std::optional<mi::InternalStrategy> strategy;
    /// The response under review; required by the two tool stages.
    const llm::ChatMessage* candidate = nullptr;
    /// "YYYY-MM-DD Weekday".
    std::string date_string;
};

struct ModelSettings {
    std::string model_id{llm::kDefaultModelId};
    double temperature = llm::kDefaultTemperature;
};

std::string format_date_string(absl::CivilDay day);

/// The leading system message for `stage`.
std::string system_block(Stage stage, const PromptContext& context, const PromptCatalog& catalog);
/// The trailing instruction, sent as an assistant message.
std::string agent_prompt(Stage stage, const PromptContext& context, const PromptCatalog& catalog);

/// [system block] ++ history (++ candidate) ++ [agent prompt]. ResponseGenerate
/// attaches both tools; ToolCallGenerate attaches both and forces visualize.
/// Throws std::invalid_argument when the stage's context is incomplete.
llm::CompletionRequest assemble(Stage stage,
                                const PromptContext& context,
                                const PromptCatalog& catalog = PromptCatalog::embedded(),
                                const ModelSettings& settings = {});

/// The system-prompt-only agent: the general system instructions followed by
/// the history, with no state prompt, chain, agent prompt or tools.
llm::CompletionRequest assemble_baseline(std::span<const llm::ChatMessage> history,
                                         std::string_view date_string,
                                         const PromptCatalog& catalog = PromptCatalog::embedded(),
                                         const ModelSettings& settings = {});

}  // namespace coach::prompts

namespace coach::prompts {

/// What every chain needs besides history and provider.
struct ChainOptions {
    /// The embedded catalog when null.
    const PromptCatalog* catalog = nullptr;
    ModelSettings model;
    std::string date_string;

    const PromptCatalog& prompts() const { return catalog ? *catalog : PromptCatalog::embedded(); }
};

}  // namespace coach::prompts
