#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/eval/external.hpp"
#include "coach/llm/provider.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::eval {

/// Rule-based splitter: breaks after runs of . ! ? (plus closing quotes or
/// brackets) followed by whitespace, and at line breaks. No break after
/// common abbreviations, single-letter initials, or when the next word
/// starts in lowercase. Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

using CodeSet = std::set<ExternalMICode>;

struct CodedUtterance {
    std::string text;
    std::vector<std::string> sentences;
    std::vector<CodeSet> sentence_codes;
    CodeSet merged;
    /// False when the coder failed; such utterances are excluded from
    /// aggregates and counted.
    bool coded = true;
    std::string error;
};

/// "{name}: {definition} Positive examples: {e1} {e2} {e3}", one per code.
std::string strategy_lines();
/// "Advise With Permission, Advise Without Permission, ...".
std::string strategy_names();
std::string coding_prompt(std::string_view sentence, const prompts::PromptCatalog& catalog = prompts::PromptCatalog::embedded());

/// Reads the bracketed list (or the whole reply without brackets).
/// Unrecognized names and "unknown" map to Unknown; an empty list is Unknown.
CodeSet parse_code_list(std::string_view reply);

struct CoderOptions {
    const prompts::PromptCatalog* catalog = nullptr;
    prompts::ModelSettings model{std::string(llm::kDefaultModelId), 0.0};

    const prompts::PromptCatalog& prompts() const {
        return catalog ? *catalog : prompts::PromptCatalog::embedded();
    }
};

/// One coder request per sentence, sent as a lone system message. Provider
/// failures mark the utterance uncoded instead of throwing.
CodedUtterance code_utterance(std::string_view text, llm::Provider& provider, const CoderOptions& options = {});

void to_json(nlohmann::json& j, const CodedUtterance& coded);
void from_json(const nlohmann::json& j, CodedUtterance& coded);

}  // namespace coach::eval
