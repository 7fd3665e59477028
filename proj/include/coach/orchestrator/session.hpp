#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/dialogue/state.hpp"
#include "coach/healthdata/time.hpp"
#include "coach/llm/chat.hpp"
#include "coach/mi/strategy.hpp"
#include "coach/tools/event.hpp"

namespace coach::orchestrator {

/// One per visible assistant message.
struct StrategyLogEntry {
    std::size_t turn_index = 0;
    /// Position of the message in Session::history.
    std::size_t message_index = 0;
    dialogue::DialogueStateId state = dialogue::DialogueStateId::Onboarding;
    mi::InternalStrategy strategy = mi::InternalStrategy::Question;

    bool operator==(const StrategyLogEntry&) const = default;
};

/// One per tool call the model made (executed or refused).
struct ToolLogEntry {
    std::size_t turn_index = 0;
    dialogue::DialogueStateId state = dialogue::DialogueStateId::Onboarding;
    std::string tool;
    bool forced = false;
    bool ok = false;
    std::optional<std::string> event_id;

    bool operator==(const ToolLogEntry&) const = default;
};

struct Session {
    std::string id;
    healthdata::Timestamp created_at{};
    /// Fixed at creation so replays see the same system prompt.
    std::string date_string;
    dialogue::DialogueStateId state = dialogue::DialogueStateId::Onboarding;
    std::vector<llm::ChatMessage> history;
    std::vector<StrategyLogEntry> strategy_log;
    std::vector<ToolLogEntry> tool_log;
    std::vector<tools::VisualizationEvent> events;
    std::string user_profile;
    /// All catalog sources are shared when unset.
    std::optional<std::set<std::string>> shared_sources;
    std::size_t turn_count = 0;
    std::size_t next_event_number = 1;

    const tools::VisualizationEvent* find_event(std::string_view event_id) const;

    bool operator==(const Session&) const = default;
};

/// Assistant messages the user sees: non-empty content.
bool is_visible_assistant(const llm::ChatMessage& message) noexcept;

void to_json(nlohmann::json& j, const StrategyLogEntry& entry);
void from_json(const nlohmann::json& j, StrategyLogEntry& entry);
void to_json(nlohmann::json& j, const ToolLogEntry& entry);
void from_json(const nlohmann::json& j, ToolLogEntry& entry);
void to_json(nlohmann::json& j, const Session& session);
void from_json(const nlohmann::json& j, Session& session);

/// Role-prefixed plain text: one block per message, continuation lines
/// indented by two spaces.
std::string export_transcript(const Session& session);

class SessionNotFoundError : public std::runtime_error {
public:
    explicit SessionNotFoundError(const std::string& id) : std::runtime_error("unknown session '" + id + "'") {}
};

class SessionCorruptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One JSON document per session, `<dir>/<id>.json`, holding the session and
/// the SHA-256 of its serialization. Writes go to a temporary file that is
/// renamed into place.
class SessionStore {
public:
    explicit SessionStore(std::filesystem::path directory);

    void save(const Session& session) const;
    /// Throws SessionNotFoundError or SessionCorruptError.
    Session load(const std::string& id) const;
    bool exists(const std::string& id) const;
    std::vector<std::string> list() const;

    std::filesystem::path path_for(const std::string& id) const;
    const std::filesystem::path& directory() const noexcept { return directory_; }

private:
    std::filesystem::path directory_;
};

/// Letters, digits, '-' and '_' only.
bool is_valid_session_id(std::string_view id) noexcept;

}  // namespace coach::orchestrator
