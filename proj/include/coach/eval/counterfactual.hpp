#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coach/dialogue/state.hpp"
#include "coach/eval/coding.hpp"
#include "coach/eval/metrics.hpp"
#include "coach/healthdata/store.hpp"
#include "coach/llm/chat.hpp"
#include "coach/llm/provider.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::eval {

struct BarrierPersona {
    std::string_view name;
    std::string_view message;
};

inline constexpr std::size_t kBarrierCount = 10;
std::span<const BarrierPersona, kBarrierCount> barrier_personas() noexcept;

/// Opening of a real conversation: assistant, user, assistant, user,
/// assistant. Loaded from {"id", "messages", "state"?, "date_string"?}.
struct SeedHistory {
    std::string id;
    std::vector<llm::ChatMessage> messages;
    dialogue::DialogueStateId state = dialogue::DialogueStateId::Program;
    std::string date_string;
};

inline constexpr std::size_t kSeedLength = 5;

/// Throws std::invalid_argument unless the history is a valid seed.
void validate_seed(const SeedHistory& seed);
SeedHistory load_seed(const std::filesystem::path& path);
/// Every *.json in `dir`, sorted by file name.
std::vector<SeedHistory> load_seeds(const std::filesystem::path& dir);

enum class Agent { Full, Baseline };
std::string_view to_string(Agent agent) noexcept;
std::optional<Agent> parse_agent(std::string_view text) noexcept;

struct CounterfactualOptions {
    std::vector<Agent> agents{Agent::Full, Agent::Baseline};
    /// Samples per cell.
    std::size_t repeats = 1;
    std::size_t parallelism = 4;
    prompts::ModelSettings model;
    const prompts::PromptCatalog* catalog = nullptr;
    CoderOptions coder;
    /// Data the full pipeline's tools read; an empty store when null.
    const healthdata::HealthStore* store = nullptr;
    /// Date string for seeds that carry none.
    std::string date_string = "2024-03-01 Friday";
};

struct Cell {
    std::string history_id;
    std::string persona;
    Agent agent = Agent::Full;
    std::size_t repeat = 0;
    bool ok = false;
    std::string error;
    /// Visible assistant messages of the turn, joined by blank lines.
    std::string response;
    CodedUtterance coded;
};

struct AgentAggregate {
    Agent agent = Agent::Full;
    std::size_t cells = 0;
    std::size_t failed = 0;
    std::size_t uncoded = 0;
    /// Cells that produced a response and were coded.
    std::size_t coded = 0;
    ConsistencySummary consistency;
    /// Fraction of coded responses containing each code (Unknown last).
    Shares<kExternalCodeSlots> containment{};
};

struct CounterfactualResult {
    /// Ordered by agent, history, persona, repeat.
    std::vector<Cell> cells;
    std::vector<AgentAggregate> aggregates;

    const AgentAggregate* aggregate(Agent agent) const;
};

/// Appends each persona message to each seed and samples each agent's reply:
/// the full pipeline runs a complete turn, the baseline one completion with
/// the general system prompt only. Every reply is coded with `coder`.
CounterfactualResult counterfactual_run(std::span<const SeedHistory> seeds,
                                        std::span<const BarrierPersona> personas,
                                        llm::Provider& agent_provider,
                                        llm::Provider& coder,
                                        const CounterfactualOptions& options = {});

/// Aggregates over given cells (all one agent).
AgentAggregate aggregate_cells(Agent agent, std::span<const Cell> cells);

}  // namespace coach::eval
