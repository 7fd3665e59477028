#include "coach/tools/executor.hpp"

#include <fmt/format.h>

namespace coach::tools {

ToolExecutor::ToolExecutor(const healthdata::HealthStore& store, std::optional<std::set<std::string>> shared_sources)
    : store_(store), shared_(std::move(shared_sources)) {}

Validation ToolExecutor::validate(const llm::ToolCall& call) const {
    return validate_tool_call(call, store_.catalog(), store_.zone());
}

VisualizationEvent ToolExecutor::build_event(const ValidatedCall& call, const std::string& event_id) const {
    VisualizationEvent event;
    event.id = event_id;
    event.source = call.source.str();
    event.unit = store_.catalog().info(call.source).unit;
    event.range = call.range;
    event.requested_granularity = call.granularity;
    event.granularity = chart_granularity(call.granularity);
    if (call.source.is_workout()) {
        event.workouts = store_.workout_summary(call.range);
    } else {
        event.buckets = store_.aggregate(call.source, call.range, event.granularity);
    }
    return event;
}

ToolResult ToolExecutor::execute(const llm::ToolCall& call, const std::string& event_id) const {
    const auto validation = validate(call);
    if (!validation.ok()) return ToolResult{validation.error, std::nullopt, false};
    const auto& valid = *validation.call;
    if (shared_ && !shared_->contains(valid.source.str())) {
        return ToolResult{fmt::format("error: source not shared: {}", valid.source.str()), std::nullopt, false};
    }

    ToolResult result{store_.render_describe(valid.source, valid.range, valid.granularity), std::nullopt, true};
    if (valid.kind == ToolKind::Visualize) result.event = build_event(valid, event_id);
    return result;
}

}  // namespace coach::tools
