#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/healthdata/store.hpp"
#include "coach/orchestrator/orchestrator.hpp"
#include "coach/orchestrator/registry.hpp"

namespace coach::service {

enum class EventKind { Message, Visualization, StateChange, Error, Done };

std::string_view to_string(EventKind kind) noexcept;

struct ApiEvent {
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::Message;
    nlohmann::json payload;
};

/// The service has no health-data store to work against.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A turn failed in the provider; the session was rolled back. Carries the
/// events already numbered for the stream (error, done).
class TurnFailedError : public std::runtime_error {
public:
    TurnFailedError(const std::string& message, std::vector<ApiEvent> events)
        : std::runtime_error(message), events_(std::move(events)) {}
    const std::vector<ApiEvent>& events() const noexcept { return events_; }

private:
    std::vector<ApiEvent> events_;
};

/// The API independent of transport. Sequence numbers increase strictly
/// within a session for the lifetime of the service; recent events are kept
/// so clients can resume after a given sequence number.
class CoachService {
public:
    static constexpr std::size_t kRetainedEvents = 1000;

    /// `store` may be null; session creation then fails with
    /// ConfigurationError.
    CoachService(std::shared_ptr<healthdata::HealthStore> store,
                 llm::Provider& provider,
                 std::filesystem::path session_dir,
                 orchestrator::OrchestratorOptions options = {});

    nlohmann::json create_session(std::optional<std::set<std::string>> shared_sources = std::nullopt,
                                  std::string user_profile = {});
    /// Throws SessionNotFoundError.
    nlohmann::json get_session(const std::string& id);
    /// Throws SessionNotFoundError, TurnInFlightError, TurnFailedError.
    std::vector<ApiEvent> post_message(const std::string& id, const std::string& text);
    /// Events with sequence greater than `after`.
    std::vector<ApiEvent> events_after(const std::string& id, std::uint64_t after);
    /// Throws SessionNotFoundError, or std::out_of_range for an unknown event.
    nlohmann::json visualization_data(const std::string& id, const std::string& event_id);
    std::string transcript(const std::string& id);
    nlohmann::json import_records(std::istream& input);
    nlohmann::json sources() const;

    orchestrator::SessionRegistry& registry() { return *registry_; }

private:
    struct Stream {
        std::uint64_t next = 1;
        std::deque<ApiEvent> retained;
    };

    ApiEvent record(const std::string& id, EventKind kind, nlohmann::json payload);
    std::shared_ptr<healthdata::HealthStore> require_store() const;

    std::shared_ptr<healthdata::HealthStore> store_;
    std::unique_ptr<orchestrator::SessionStore> sessions_;
    std::unique_ptr<orchestrator::Orchestrator> orchestrator_;
    std::unique_ptr<orchestrator::SessionRegistry> registry_;
    std::mutex streams_mutex_;
    std::map<std::string, Stream> streams_;
};

nlohmann::json to_json(const ApiEvent& event);
/// "id: <seq>\nevent: <kind>\ndata: <json>\n\n".
std::string to_sse(const ApiEvent& event);

/// Payload for GET .../events/{eid}/data.
nlohmann::json visualization_payload(const tools::VisualizationEvent& event,
                                     const healthdata::SourceCatalog& catalog,
                                     const healthdata::Zone& zone);

}  // namespace coach::service
