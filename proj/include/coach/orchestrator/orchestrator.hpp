#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coach/healthdata/store.hpp"
#include "coach/llm/chat.hpp"
#include "coach/llm/provider.hpp"
#include "coach/orchestrator/session.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::orchestrator {

inline constexpr std::size_t kDefaultMaxToolCalls = 3;
inline constexpr std::string_view kToolLimitText = "error: tool call limit reached for this turn";

struct StateChange {
    dialogue::DialogueStateId from;
    dialogue::DialogueStateId to;

    bool operator==(const StateChange&) const = default;
};

struct MessageItem {
    llm::ChatMessage message;
    mi::InternalStrategy strategy;

    bool operator==(const MessageItem&) const = default;
};

struct VisualizationItem {
    std::string event_id;

    bool operator==(const VisualizationItem&) const = default;
};

using TurnItem = std::variant<StateChange, MessageItem, VisualizationItem>;

/// Everything a turn produced, in emission order.
struct TurnOutput {
    std::vector<TurnItem> items;

    std::vector<llm::ChatMessage> messages() const;
    std::vector<std::string> event_ids() const;
};

struct OrchestratorOptions {
    std::size_t max_tool_calls = kDefaultMaxToolCalls;
    prompts::ModelSettings model;
    /// The embedded catalog when null.
    const prompts::PromptCatalog* catalog = nullptr;
    std::function<healthdata::Timestamp()> clock = [] {
        return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
    };
    /// Random 16-hex-digit ids by default.
    std::function<std::string()> id_generator;
};

/// Extras for assemble_prompt.
struct PromptExtras {
    std::optional<mi::InternalStrategy> strategy;
    const llm::ChatMessage* candidate = nullptr;
};

/// Runs user turns through the three chains. When a session store is given,
/// every completed turn is persisted; a failed turn restores the session and
/// leaves the persisted copy untouched.
class Orchestrator {
public:
    Orchestrator(const healthdata::HealthStore& store,
                 llm::Provider& provider,
                 const SessionStore* sessions = nullptr,
                 OrchestratorOptions options = {});

    /// New session in Onboarding. Persisted when a store is configured.
    Session create_session(std::optional<std::set<std::string>> shared_sources = std::nullopt,
                           std::string user_profile = {}) const;

    /// Throws whatever the chains throw; `session` is then unchanged.
    TurnOutput handle_user_message(Session& session, std::string_view text) const;

    llm::CompletionRequest assemble_prompt(prompts::Stage stage, const Session& session, const PromptExtras& extras) const;

    prompts::ChainOptions chain_options(const Session& session) const;
    const OrchestratorOptions& options() const noexcept { return options_; }
    const healthdata::HealthStore& store() const noexcept { return store_; }
    llm::Provider& provider() const noexcept { return provider_; }

private:
    void run_turn(Session& session, std::string_view text, TurnOutput& out) const;

    const healthdata::HealthStore& store_;
    llm::Provider& provider_;
    const SessionStore* sessions_;
    OrchestratorOptions options_;
};

}  // namespace coach::orchestrator
