#include "coach/mi/chain.hpp"

#include <stdexcept>

#include <spdlog/spdlog.h>

#include "coach/llm/gateway.hpp"
#include "coach/util/text.hpp"

namespace coach::mi {

std::optional<InternalStrategy> parse_strategy_output(std::string_view text) {
    text = util::trim(text);
    // First line only; models sometimes add a justification.
    if (const auto newline = text.find('\n'); newline != std::string_view::npos) text = text.substr(0, newline);
    auto lowered = util::to_lower(text);
    constexpr std::string_view kLabel = "strategy:";
    if (const auto pos = lowered.find(kLabel); pos != std::string::npos) {
        text = text.substr(pos + kLabel.size());
    }
    const auto cleaned = util::normalize_verdict(text);
    return parse_strategy_name(cleaned);
}

InternalStrategy predict_strategy(std::span<const llm::ChatMessage> history,
                                  dialogue::DialogueStateId state,
                                  llm::Provider& provider,
                                  const prompts::ChainOptions& options) {
    if (history.empty() || history.back().role != llm::Role::User) {
        throw std::invalid_argument("predict_strategy needs a history ending with a user message");
    }
    prompts::PromptContext context{.history = history, .state = state, .date_string = options.date_string};
    const auto request =
        prompts::assemble(prompts::Stage::StrategyPredict, context, options.prompts(), options.model);
    const auto reply = llm::complete(request, provider);
    if (auto strategy = parse_strategy_output(reply.content)) return *strategy;
    spdlog::warn("strategy predictor returned '{}'; falling back to {}", reply.content,
                 to_string(kFallbackStrategy));
    return kFallbackStrategy;
}

GroundedResponse generate_response(std::span<const llm::ChatMessage> history,
                                   dialogue::DialogueStateId state,
                                   InternalStrategy strategy,
                                   llm::Provider& provider,
                                   const prompts::ChainOptions& options) {
    prompts::PromptContext context{
        .history = history, .state = state, .strategy = strategy, .date_string = options.date_string};
    const auto request =
        prompts::assemble(prompts::Stage::ResponseGenerate, context, options.prompts(), options.model);
    return GroundedResponse{strategy, llm::complete(request, provider)};
}

}  // namespace coach::mi
