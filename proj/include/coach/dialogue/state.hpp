#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace coach::dialogue {

/// The onboarding program, in order. GoodBye is terminal.
enum class DialogueStateId { Onboarding, Program, PastExperience, Barriers, Motivation, GoalSetting, Advice, GoodBye };

inline constexpr std::array kAllStates{
    DialogueStateId::Onboarding, DialogueStateId::Program,     DialogueStateId::PastExperience,
    DialogueStateId::Barriers,   DialogueStateId::Motivation,  DialogueStateId::GoalSetting,
    DialogueStateId::Advice,     DialogueStateId::GoodBye,
};

inline constexpr std::size_t kStateCount = kAllStates.size();

constexpr std::size_t index_of(DialogueStateId state) noexcept { return static_cast<std::size_t>(state); }

constexpr DialogueStateId successor(DialogueStateId state) noexcept {
    return state == DialogueStateId::GoodBye ? state : static_cast<DialogueStateId>(index_of(state) + 1);
}

std::string_view to_string(DialogueStateId state) noexcept;
std::optional<DialogueStateId> parse_state(std::string_view text) noexcept;

enum class AdvanceDecision { Continue, Completed };

std::string_view to_string(AdvanceDecision decision) noexcept;

}  // namespace coach::dialogue
