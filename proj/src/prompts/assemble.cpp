#include "coach/prompts/assemble.hpp"

#include <stdexcept>

#include <absl/time/time.h>
#include <fmt/format.h>

#include "coach/tools/schemas.hpp"

namespace coach::prompts {

namespace {

constexpr std::string_view kSeparator = "\n\n";

std::string join(std::initializer_list<std::string_view> parts) {
    std::string out;
    for (auto part : parts) {
        if (!out.empty()) out += kSeparator;
        out += part;
    }
    return out;
}

mi::InternalStrategy require_strategy(Stage stage, const PromptContext& context) {
    if (!context.strategy) throw std::invalid_argument(fmt::format("{} prompt needs a strategy", to_string(stage)));
    return *context.strategy;
}

std::string general_system(const PromptContext& context, const PromptCatalog& catalog) {
    return fill(catalog.text(asset::kSystem), slot::kDateString, context.date_string);
}

}  // namespace

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::StateClassify: return "state_classify";
        case Stage::StrategyPredict: return "strategy_predict";
        case Stage::ResponseGenerate: return "response_generate";
        case Stage::ToolNeedPredict: return "tool_need_predict";
        case Stage::ToolCallGenerate: return "tool_call_generate";
    }
    return "unknown";
}

std::string format_date_string(absl::CivilDay day) {
    static constexpr std::string_view kWeekdays[] = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                                     "Friday", "Saturday", "Sunday"};
    const auto weekday = absl::GetWeekday(day);
    return fmt::format("{:04}-{:02}-{:02} {}", day.year(), day.month(), day.day(),
                       kWeekdays[static_cast<int>(weekday)]);
}

std::string system_block(Stage stage, const PromptContext& context, const PromptCatalog& catalog) {
    const auto& state = catalog.state_prompt(context.state);
    switch (stage) {
        case Stage::StateClassify:
            return fill(catalog.text(asset::kStateClassifySystem), slot::kStatePrompt, state);
        case Stage::StrategyPredict:
            return join({general_system(context, catalog), state, catalog.text(asset::kStrategyPredictInstructions),
                         catalog.text(asset::kStrategyDescriptions)});
        case Stage::ResponseGenerate:
            return join({general_system(context, catalog), state, catalog.text(asset::kResponseGenerateInstructions),
                         catalog.text(asset::kStrategyDescriptions), catalog.text(asset::kToolExamples)});
        case Stage::ToolNeedPredict:
            return join({general_system(context, catalog), state, catalog.text(asset::kToolNeedInstructions),
                         catalog.text(asset::kToolExamples)});
        case Stage::ToolCallGenerate:
            return join({general_system(context, catalog), state, catalog.text(asset::kToolCallInstructions),
                         catalog.text(asset::kToolExamples)});
    }
    throw std::invalid_argument("unknown prompt stage");
}

std::string agent_prompt(Stage stage, const PromptContext& context, const PromptCatalog& catalog) {
    const auto& state = catalog.state_prompt(context.state);
    std::string text;
    switch (stage) {
        case Stage::StateClassify: text = catalog.text(asset::kStateClassifyAgent); break;
        case Stage::StrategyPredict:
            text = fill(catalog.text(asset::kStrategyPredictAgent), slot::kStrategies, catalog.strategy_list());
            break;
        case Stage::ResponseGenerate: text = catalog.text(asset::kResponseGenerateAgent); break;
        case Stage::ToolNeedPredict: text = catalog.text(asset::kToolNeedAgent); break;
        case Stage::ToolCallGenerate: text = catalog.text(asset::kToolCallAgent); break;
    }
    if (stage == Stage::ResponseGenerate || stage == Stage::ToolNeedPredict || stage == Stage::ToolCallGenerate) {
        text = fill(std::move(text), slot::kStrategyDescription,
                    catalog.strategy_description(require_strategy(stage, context)));
    }
    return fill(std::move(text), slot::kStatePrompt, state);
}

llm::CompletionRequest assemble(Stage stage,
                                const PromptContext& context,
                                const PromptCatalog& catalog,
                                const ModelSettings& settings) {
    const bool tool_stage = stage == Stage::ToolNeedPredict || stage == Stage::ToolCallGenerate;
    if (tool_stage && context.candidate == nullptr) {
        throw std::invalid_argument(fmt::format("{} prompt needs a candidate response", to_string(stage)));
    }

    llm::CompletionRequest request;
    request.model_id = settings.model_id;
    request.temperature = settings.temperature;
    request.stage = std::string(to_string(stage));

    request.messages.reserve(context.history.size() + 3);
    request.messages.push_back(llm::ChatMessage::system(system_block(stage, context, catalog)));
    request.messages.insert(request.messages.end(), context.history.begin(), context.history.end());
    if (tool_stage) request.messages.push_back(*context.candidate);
    request.messages.push_back(llm::ChatMessage::assistant(agent_prompt(stage, context, catalog)));

    if (stage == Stage::ResponseGenerate || stage == Stage::ToolCallGenerate) request.tools = tools::tool_schemas();
    if (stage == Stage::ToolCallGenerate) request.forced_tool = std::string(tools::kVisualize);
    return request;
}

llm::CompletionRequest assemble_baseline(std::span<const llm::ChatMessage> history,
                                         std::string_view date_string,
                                         const PromptCatalog& catalog,
                                         const ModelSettings& settings) {
    llm::CompletionRequest request;
    request.model_id = settings.model_id;
    request.temperature = settings.temperature;
    request.stage = std::string(kBaselineStage);
    request.messages.push_back(
        llm::ChatMessage::system(fill(catalog.text(asset::kSystem), slot::kDateString, date_string)));
    request.messages.insert(request.messages.end(), history.begin(), history.end());
    return request;
}

}  // namespace coach::prompts
