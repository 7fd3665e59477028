#pragma once

#include <optional>
#include <set>
#include <string>

#include "coach/healthdata/store.hpp"
#include "coach/llm/chat.hpp"
#include "coach/tools/event.hpp"
#include "coach/tools/validate.hpp"

namespace coach::tools {

struct ToolResult {
    /// Text returned to the model as the tool message.
    std::string text;
    std::optional<VisualizationEvent> event;
    bool ok = false;
};

/// Runs describe/visualize against a health store. When `shared_sources` is
/// set, sources outside it answer "error: source not shared: <name>".
class ToolExecutor {
public:
    ToolExecutor(const healthdata::HealthStore& store, std::optional<std::set<std::string>> shared_sources = {});

    /// `event_id` names the event a successful visualize produces.
    ToolResult execute(const llm::ToolCall& call, const std::string& event_id) const;

    Validation validate(const llm::ToolCall& call) const;

    /// Recomputes an event's payload from the store.
    VisualizationEvent build_event(const ValidatedCall& call, const std::string& event_id) const;

private:
    const healthdata::HealthStore& store_;
    std::optional<std::set<std::string>> shared_;
};

}  // namespace coach::tools
