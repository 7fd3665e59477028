#include "coach/dialogue/state.hpp"

namespace coach::dialogue {

namespace {
constexpr std::array<std::string_view, kStateCount> kNames{
    "Onboarding", "Program", "PastExperience", "Barriers", "Motivation", "GoalSetting", "Advice", "GoodBye",
};
}

std::string_view to_string(DialogueStateId state) noexcept { return kNames[index_of(state)]; }

std::optional<DialogueStateId> parse_state(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == text) return kAllStates[i];
    }
    return std::nullopt;
}

std::string_view to_string(AdvanceDecision decision) noexcept {
    return decision == AdvanceDecision::Completed ? "completed" : "continue";
}

}  // namespace coach::dialogue
