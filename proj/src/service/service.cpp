#include "coach/service/service.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "coach/llm/errors.hpp"

namespace coach::service {

namespace {

const healthdata::HealthStore& empty_store() {
    static const healthdata::HealthStore store;
    return store;
}

nlohmann::json session_summary(const orchestrator::Session& s) {
    auto messages = nlohmann::json::array();
    for (const auto& m : s.history) {
        if (m.role == llm::Role::User || orchestrator::is_visible_assistant(m)) {
            messages.push_back({{"role", llm::to_string(m.role)}, {"content", m.content}});
        }
    }
    auto events = nlohmann::json::array();
    for (const auto& e : s.events) events.push_back(e.id);
    return {{"id", s.id},
            {"created_at", healthdata::format_rfc3339(s.created_at)},
            {"state", dialogue::to_string(s.state)},
            {"turn_count", s.turn_count},
            {"messages", std::move(messages)},
            {"events", std::move(events)},
            {"shared_sources", s.shared_sources ? nlohmann::json(*s.shared_sources) : nlohmann::json()}};
}

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::Message: return "message";
        case EventKind::Visualization: return "visualization";
        case EventKind::StateChange: return "state_change";
        case EventKind::Error: return "error";
        case EventKind::Done: return "done";
    }
    return "unknown";
}

nlohmann::json to_json(const ApiEvent& event) {
    return {{"sequence", event.sequence}, {"kind", to_string(event.kind)}, {"payload", event.payload}};
}

std::string to_sse(const ApiEvent& event) {
    return fmt::format("id: {}\nevent: {}\ndata: {}\n\n", event.sequence, to_string(event.kind),
                       event.payload.dump());
}

nlohmann::json visualization_payload(const tools::VisualizationEvent& event,
                                     const healthdata::SourceCatalog& catalog,
                                     const healthdata::Zone& zone) {
    nlohmann::json payload = event;
    if (const auto* info = catalog.find(event.source)) {
        payload["source_info"] = {{"name", info->name},
                                  {"description", info->description},
                                  {"unit", info->unit},
                                  {"aggregation", healthdata::to_string(info->aggregation)}};
    }
    // Bucket labels in the store zone, matching the model-facing text.
    for (std::size_t i = 0; i < event.buckets.size(); ++i) {
        payload["buckets"][i]["label"] =
            healthdata::format_local(event.buckets[i].bucket_start, "%Y-%m-%d-%H-%M", zone);
    }
    payload["zone"] = zone.name();
    return payload;
}

CoachService::CoachService(std::shared_ptr<healthdata::HealthStore> store,
                           llm::Provider& provider,
                           std::filesystem::path session_dir,
                           orchestrator::OrchestratorOptions options)
    : store_(std::move(store)), sessions_(std::make_unique<orchestrator::SessionStore>(std::move(session_dir))) {
    const auto& data = store_ ? *store_ : empty_store();
    orchestrator_ = std::make_unique<orchestrator::Orchestrator>(data, provider, sessions_.get(), std::move(options));
    registry_ = std::make_unique<orchestrator::SessionRegistry>(*orchestrator_, *sessions_);
}

std::shared_ptr<healthdata::HealthStore> CoachService::require_store() const {
    if (!store_) throw ConfigurationError("no health-data store configured");
    return store_;
}

ApiEvent CoachService::record(const std::string& id, EventKind kind, nlohmann::json payload) {
    std::lock_guard lock(streams_mutex_);
    auto& stream = streams_[id];
    ApiEvent event{stream.next++, kind, std::move(payload)};
    stream.retained.push_back(event);
    if (stream.retained.size() > kRetainedEvents) stream.retained.pop_front();
    return event;
}

nlohmann::json CoachService::create_session(std::optional<std::set<std::string>> shared_sources,
                                            std::string user_profile) {
    const auto store = require_store();
    if (shared_sources) {
        for (const auto& name : *shared_sources) {
            if (!store->catalog().find(name)) throw healthdata::UnknownSourceError(name);
        }
        if (shared_sources->empty()) spdlog::warn("session created with no shared data sources");
    }
    return session_summary(registry_->create(std::move(shared_sources), std::move(user_profile)));
}

nlohmann::json CoachService::get_session(const std::string& id) { return session_summary(registry_->get(id)); }

std::vector<ApiEvent> CoachService::post_message(const std::string& id, const std::string& text) {
    require_store();
    orchestrator::Session after;
    orchestrator::TurnOutput output;
    try {
        output = registry_->post(id, text, &after);
    } catch (const llm::LlmError& e) {
        spdlog::error("turn failed for session {}: {}", id, e.what());
        std::vector<ApiEvent> events{record(id, EventKind::Error, {{"status", 502}, {"message", e.what()}}),
                                     record(id, EventKind::Done, {{"ok", false}})};
        throw TurnFailedError(e.what(), std::move(events));
    }

    std::vector<ApiEvent> events;
    for (const auto& item : output.items) {
        if (const auto* change = std::get_if<orchestrator::StateChange>(&item)) {
            events.push_back(record(id, EventKind::StateChange,
                                    {{"from", dialogue::to_string(change->from)}, {"to", dialogue::to_string(change->to)}}));
        } else if (const auto* message = std::get_if<orchestrator::MessageItem>(&item)) {
            events.push_back(record(id, EventKind::Message,
                                    {{"role", "assistant"},
                                     {"content", message->message.content},
                                     {"strategy", mi::to_string(message->strategy)}}));
        } else if (const auto* viz = std::get_if<orchestrator::VisualizationItem>(&item)) {
            const auto* event = after.find_event(viz->event_id);
            events.push_back(record(id, EventKind::Visualization,
                                    {{"event_id", viz->event_id},
                                     {"source", event ? event->source : ""},
                                     {"data_url", fmt::format("/sessions/{}/events/{}/data", id, viz->event_id)}}));
        }
    }
    events.push_back(
        record(id, EventKind::Done, {{"ok", true}, {"state", dialogue::to_string(after.state)}, {"turn", after.turn_count}}));
    return events;
}

std::vector<ApiEvent> CoachService::events_after(const std::string& id, std::uint64_t after) {
    registry_->get(id);
    std::lock_guard lock(streams_mutex_);
    std::vector<ApiEvent> out;
    if (const auto it = streams_.find(id); it != streams_.end()) {
        for (const auto& e : it->second.retained) {
            if (e.sequence > after) out.push_back(e);
        }
    }
    return out;
}

nlohmann::json CoachService::visualization_data(const std::string& id, const std::string& event_id) {
    const auto session = registry_->get(id);
    const auto* event = session.find_event(event_id);
    if (!event) throw std::out_of_range(fmt::format("session '{}' has no event '{}'", id, event_id));
    const auto store = require_store();
    return visualization_payload(*event, store->catalog(), store->zone());
}

std::string CoachService::transcript(const std::string& id) {
    return orchestrator::export_transcript(registry_->get(id));
}

nlohmann::json CoachService::import_records(std::istream& input) {
    const auto report = require_store()->ingest(input);
    auto rejections = nlohmann::json::array();
    for (const auto& r : report.rejections) rejections.push_back({{"line", r.line}, {"reason", r.reason}});
    return {{"accepted", report.accepted},
            {"rejected", report.rejected},
            {"duplicates", report.duplicates},
            {"rejections", std::move(rejections)}};
}

nlohmann::json CoachService::sources() const {
    auto out = nlohmann::json::array();
    for (const auto& s : require_store()->catalog().entries()) {
        out.push_back({{"name", s.name},
                       {"description", s.description},
                       {"unit", s.unit},
                       {"aggregation", healthdata::to_string(s.aggregation)}});
    }
    return out;
}

}  // namespace coach::service
