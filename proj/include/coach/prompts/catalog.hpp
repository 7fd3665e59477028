#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coach/dialogue/state.hpp"
#include "coach/mi/strategy.hpp"

namespace coach::prompts {

/// Asset names, relative to the prompt directory.
namespace asset {
inline constexpr std::string_view kSystem = "system.txt";
inline constexpr std::string_view kStateClassifySystem = "state_classify_system.txt";
inline constexpr std::string_view kStateClassifyAgent = "state_classify_agent.txt";
inline constexpr std::string_view kStrategyPredictInstructions = "strategy_predict_instructions.txt";
inline constexpr std::string_view kStrategyDescriptions = "strategy_descriptions.txt";
inline constexpr std::string_view kStrategyPredictAgent = "strategy_predict_agent.txt";
inline constexpr std::string_view kResponseGenerateInstructions = "response_generate_instructions.txt";
inline constexpr std::string_view kToolExamples = "tool_examples.txt";
inline constexpr std::string_view kResponseGenerateAgent = "response_generate_agent.txt";
inline constexpr std::string_view kToolNeedInstructions = "tool_need_instructions.txt";
inline constexpr std::string_view kToolNeedAgent = "tool_need_agent.txt";
inline constexpr std::string_view kToolCallInstructions = "tool_call_instructions.txt";
inline constexpr std::string_view kToolCallAgent = "tool_call_agent.txt";
inline constexpr std::string_view kMiCoding = "mi_coding.txt";
inline constexpr std::string_view kManifest = "manifest.json";

inline constexpr std::array<std::string_view, dialogue::kStateCount> kStates{
    "states/1_onboarding.txt", "states/2_program.txt",      "states/3_past_experience.txt", "states/4_barriers.txt",
    "states/5_motivation.txt", "states/6_goal_setting.txt", "states/7_advice.txt",          "states/8_goodbye.txt",
};
}  // namespace asset

/// Template slots.
namespace slot {
inline constexpr std::string_view kDateString = "{DATE_STRING}";
inline constexpr std::string_view kStatePrompt = "{DIALOGUE STATE PROMPT}";
inline constexpr std::string_view kStrategies = "{STRATEGIES}";
inline constexpr std::string_view kStrategyDescription = "{STRATEGY_DESCRIPTION}";
inline constexpr std::string_view kUtterance = "{UTTERANCE}";
inline constexpr std::string_view kStrategyLines = "{STRATEGY_LINES}";
}  // namespace slot

class PromptCatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The versioned prompt texts. Construction verifies every file against the
/// SHA-256 checksums in manifest.json and fails on any mismatch or missing
/// asset.
class PromptCatalog {
public:
    /// Catalog compiled into the binary; verified on first use.
    static const PromptCatalog& embedded();
    static PromptCatalog from_directory(const std::filesystem::path& dir);
    /// `files` maps asset name to raw bytes and must include the manifest.
    static PromptCatalog from_files(std::map<std::string, std::string, std::less<>> files);

    /// Asset text without its trailing newline.
    const std::string& text(std::string_view name) const;

    const std::string& state_prompt(dialogue::DialogueStateId state) const;
    /// The strategy's paragraph from the strategy descriptions, e.g.
    /// `Affirm: Positive reinforcement, ...`.
    const std::string& strategy_description(mi::InternalStrategy strategy) const;
    /// "Advise with Permission, Affirm, ..., Structure".
    std::string strategy_list() const;

    int version() const noexcept { return version_; }
    /// SHA-256 of the manifest; identifies the catalog revision.
    const std::string& checksum() const noexcept { return checksum_; }

private:
    PromptCatalog() = default;

    std::map<std::string, std::string, std::less<>> texts_;
    std::array<std::string, mi::kStrategyCount> strategy_lines_;
    int version_ = 0;
    std::string checksum_;
};

/// Replaces every occurrence of `slot` in `text`.
std::string fill(std::string text, std::string_view slot, std::string_view value);

}  // namespace coach::prompts
