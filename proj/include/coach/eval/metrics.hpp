#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "coach/dialogue/state.hpp"
#include "coach/eval/coding.hpp"
#include "coach/eval/external.hpp"
#include "coach/mi/strategy.hpp"
#include "coach/orchestrator/session.hpp"

namespace coach::eval {

/// A finished session plus optional coder output keyed by the history index
/// of each visible assistant message.
struct Transcript {
    orchestrator::Session session;
    std::map<std::size_t, CodedUtterance> coded;
};

struct TurnLength {
    std::size_t turn_index = 0;
    /// Transcripts that reached this turn.
    std::size_t transcripts = 0;
    /// Mean characters of visible assistant content in the turn.
    double agent_mean_chars = 0.0;
    double user_mean_chars = 0.0;
};

template <std::size_t N>
using Counts = std::array<std::size_t, N>;
template <std::size_t N>
using Shares = std::array<double, N>;

struct TranscriptMetrics {
    std::size_t transcripts = 0;

    std::size_t agent_messages = 0;
    Counts<dialogue::kStateCount> state_messages{};
    /// state_messages / agent_messages.
    Shares<dialogue::kStateCount> state_share{};
    /// state_messages averaged over transcripts.
    Shares<dialogue::kStateCount> state_mean_agent_messages{};

    std::size_t tool_calls = 0;
    Counts<dialogue::kStateCount> state_tool_calls{};
    Shares<dialogue::kStateCount> state_tool_share{};

    std::vector<TurnLength> turn_lengths;

    Counts<mi::kStrategyCount> strategy_counts{};
    Shares<mi::kStrategyCount> strategy_share{};
    /// turn index -> strategy counts.
    std::map<std::size_t, Counts<mi::kStrategyCount>> strategy_by_turn;

    std::size_t coded_responses = 0;
    std::size_t uncoded_responses = 0;
    /// Occurrences across merged code sets, Unknown in the last slot.
    Counts<kExternalCodeSlots> code_counts{};
    /// code_counts / codes excluding Unknown (Unknown share stays 0).
    Shares<kExternalCodeSlots> code_share{};
    /// Fraction of coded responses whose merged set contains the code.
    Shares<kExternalCodeSlots> code_containment{};
    /// Consistent, Inconsistent, Neutral over all non-Unknown codes.
    Counts<3> consistency_counts{};
    Shares<3> consistency_share{};
    /// Distinct non-Unknown codes per coded response, averaged.
    double mean_codes_per_response = 0.0;
};

TranscriptMetrics transcript_metrics(std::span<const Transcript> transcripts);

/// Consistency counts and shares over a collection of merged code sets.
struct ConsistencySummary {
    Counts<3> counts{};
    Shares<3> shares{};
};
ConsistencySummary consistency_summary(std::span<const CodeSet> code_sets);

std::size_t consistency_slot(Consistency c);

/// Codes every visible assistant message named in the strategy log, keyed
/// by history index.
std::map<std::size_t, CodedUtterance> code_transcript(const orchestrator::Session& session,
                                                      llm::Provider& coder,
                                                      const CoderOptions& options = {});

/// A session file as written by SessionStore (checksum verified) or a bare
/// session JSON document.
orchestrator::Session load_session_file(const std::filesystem::path& path);

/// Coded output as written by `eval code`: {session_id: {message_index: coded}}.
using CodedCorpus = std::map<std::string, std::map<std::size_t, CodedUtterance>>;
nlohmann::json coded_corpus_to_json(const CodedCorpus& corpus);
CodedCorpus coded_corpus_from_json(const nlohmann::json& j);

}  // namespace coach::eval
