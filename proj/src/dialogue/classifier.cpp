#include "coach/dialogue/classifier.hpp"

#include <stdexcept>

#include <spdlog/spdlog.h>

#include "coach/llm/gateway.hpp"
#include "coach/util/text.hpp"

namespace coach::dialogue {

std::optional<AdvanceDecision> parse_advance_verdict(std::string_view text) {
    const auto verdict = util::normalize_verdict(text);
    if (verdict == "completed") return AdvanceDecision::Completed;
    if (verdict == "continue") return AdvanceDecision::Continue;
    return std::nullopt;
}

AdvanceDecision classify_advance(std::span<const llm::ChatMessage> history,
                                 DialogueStateId state,
                                 llm::Provider& provider,
                                 const prompts::ChainOptions& options) {
    if (history.empty() || history.back().role != llm::Role::User) {
        throw std::invalid_argument("classify_advance needs a history ending with a user message");
    }
    prompts::PromptContext context{.history = history, .state = state, .date_string = options.date_string};
    const auto request =
        prompts::assemble(prompts::Stage::StateClassify, context, options.prompts(), options.model);
    const auto reply = llm::complete(request, provider);
    if (auto decision = parse_advance_verdict(reply.content)) return *decision;
    spdlog::warn("state classifier returned an unparseable verdict '{}'; continuing in {}", reply.content,
                 to_string(state));
    return AdvanceDecision::Continue;
}

}  // namespace coach::dialogue
