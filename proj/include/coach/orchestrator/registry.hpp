#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "coach/orchestrator/orchestrator.hpp"
#include "coach/orchestrator/session.hpp"

namespace coach::orchestrator {

class TurnInFlightError : public std::runtime_error {
public:
    explicit TurnInFlightError(const std::string& id)
        : std::runtime_error("session '" + id + "' is already processing a turn") {}
};

/// Serves sessions to concurrent callers: one turn at a time per session,
/// sessions independent of each other. Reads during a turn see the state
/// before the turn.
class SessionRegistry {
public:
    SessionRegistry(const Orchestrator& orchestrator, const SessionStore& store);

    Session create(std::optional<std::set<std::string>> shared_sources = std::nullopt, std::string user_profile = {});
    /// Throws SessionNotFoundError / SessionCorruptError.
    Session get(const std::string& id);
    /// Throws SessionNotFoundError, TurnInFlightError, or the turn's error.
    TurnOutput post(const std::string& id, std::string_view text, Session* after = nullptr);

private:
    struct Entry {
        std::mutex turn;
        std::mutex data;
        Session session;
    };

    std::shared_ptr<Entry> entry(const std::string& id);

    const Orchestrator& orchestrator_;
    const SessionStore& store_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> entries_;
};

}  // namespace coach::orchestrator
