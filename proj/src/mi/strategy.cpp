#include "coach/mi/strategy.hpp"

#include <cctype>
#include <string>

namespace coach::mi {

namespace {

constexpr std::array<StrategyInfo, kStrategyCount> kCatalog{{
    {InternalStrategy::AdviseWithPermission, "AdviseWithPermission", "Advise with Permission",
     "Give advice, make a suggestion, or offer a solution or possible action, after gaining permission.",
     "\"Would it be all right if I suggested something?\""},
    {InternalStrategy::Affirm, "Affirm", "Affirm", "Say something positive or complimentary to the client.",
     "\"You’re a very resourceful person.\""},
    {InternalStrategy::Facilitate, "Facilitate", "Facilitate",
     "Simple utterances that function as \"keep going\" acknowledgments.", "\"Mm Hmm. Tell me more.\""},
    {InternalStrategy::Filler, "Filler", "Filler", "Responses not categorizable elsewhere, such as pleasantries.",
     "\"Good Morning, John.\""},
    {InternalStrategy::GivingInformation, "GivingInformation", "Giving Information",
     "Give information to the client, explain something, educate or provide feedback or disclose personal "
     "information.",
     "\"Your heart rate was higher during today's workout.\""},
    {InternalStrategy::Question, "Question", "Question",
     "Ask a question in order to gather information, understand, or elicit the client's story.",
     "\"How do you feel about that?\""},
    {InternalStrategy::RaiseConcern, "RaiseConcern", "Raise Concern",
     "Point out a possible problem with a client's goal, plan, or intention.",
     "\"I’m worried about your plan to decrease workout days.\""},
    {InternalStrategy::Reflect, "Reflect", "Reflect",
     "A reflective listening statement made by the counselor in response to a client statement.",
     "\"You’re looking for a more relaxed environment.\""},
    {InternalStrategy::Reframe, "Reframe", "Reframe",
     "Suggest a different meaning for an experience expressed by the client, placing it in a new light.",
     "Client: \"My husband is always nagging me about going to the gym.\" Counselor: \"It sounds like he's "
     "concerned about your health.\""},
    {InternalStrategy::Support, "Support", "Support", "Generally sympathetic, compassionate, or understanding comments.",
     "\"That must have been difficult.\""},
    {InternalStrategy::Structure, "Structure", "Structure",
     "Give information about what’s going to happen directly to the client throughout the course of treatment or "
     "within a study format, in this or subsequent sessions.",
     "\"What we normally do is start by asking about your physical activity.\""},
}};

std::string squash(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == ' ' || c == '-' || c == '_') continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace

std::span<const StrategyInfo, kStrategyCount> strategy_catalog() noexcept { return kCatalog; }

const StrategyInfo& info(InternalStrategy strategy) noexcept { return kCatalog[index_of(strategy)]; }

std::string_view to_string(InternalStrategy strategy) noexcept { return info(strategy).identifier; }

std::optional<InternalStrategy> parse_strategy_name(std::string_view text) noexcept {
    const auto key = squash(text);
    if (key.empty()) return std::nullopt;
    for (const auto& s : kCatalog) {
        if (squash(s.identifier) == key) return s.id;
    }
    return std::nullopt;
}

}  // namespace coach::mi
