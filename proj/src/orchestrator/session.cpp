#include "coach/orchestrator/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "coach/util/sha256.hpp"

namespace coach::orchestrator {

namespace {

constexpr std::string_view kFormat = "coach-session/1";

dialogue::DialogueStateId state_from(const nlohmann::json& j) {
    const auto state = dialogue::parse_state(j.get<std::string>());
    if (!state) throw std::invalid_argument("unknown dialogue state '" + j.get<std::string>() + "'");
    return *state;
}

mi::InternalStrategy strategy_from(const nlohmann::json& j) {
    const auto strategy = mi::parse_strategy_name(j.get<std::string>());
    if (!strategy) throw std::invalid_argument("unknown strategy '" + j.get<std::string>() + "'");
    return *strategy;
}

healthdata::Timestamp time_from(const nlohmann::json& j) {
    const auto parsed = healthdata::parse_rfc3339(j.get<std::string>());
    if (!parsed) throw std::invalid_argument("bad timestamp '" + j.get<std::string>() + "'");
    return parsed->time;
}

}  // namespace

const tools::VisualizationEvent* Session::find_event(std::string_view event_id) const {
    const auto it = std::find_if(events.begin(), events.end(), [&](const auto& e) { return e.id == event_id; });
    return it == events.end() ? nullptr : &*it;
}

bool is_visible_assistant(const llm::ChatMessage& message) noexcept {
    return message.role == llm::Role::Assistant && !message.content.empty();
}

void to_json(nlohmann::json& j, const StrategyLogEntry& entry) {
    j = {{"turn_index", entry.turn_index},
         {"message_index", entry.message_index},
         {"state", dialogue::to_string(entry.state)},
         {"strategy", mi::to_string(entry.strategy)}};
}

void from_json(const nlohmann::json& j, StrategyLogEntry& entry) {
    entry.turn_index = j.at("turn_index").get<std::size_t>();
    entry.message_index = j.at("message_index").get<std::size_t>();
    entry.state = state_from(j.at("state"));
    entry.strategy = strategy_from(j.at("strategy"));
}

void to_json(nlohmann::json& j, const ToolLogEntry& entry) {
    j = {{"turn_index", entry.turn_index},
         {"state", dialogue::to_string(entry.state)},
         {"tool", entry.tool},
         {"forced", entry.forced},
         {"ok", entry.ok},
         {"event_id", entry.event_id ? nlohmann::json(*entry.event_id) : nlohmann::json()}};
}

void from_json(const nlohmann::json& j, ToolLogEntry& entry) {
    entry.turn_index = j.at("turn_index").get<std::size_t>();
    entry.state = state_from(j.at("state"));
    entry.tool = j.at("tool").get<std::string>();
    entry.forced = j.at("forced").get<bool>();
    entry.ok = j.at("ok").get<bool>();
    entry.event_id.reset();
    if (!j.at("event_id").is_null()) entry.event_id = j.at("event_id").get<std::string>();
}

void to_json(nlohmann::json& j, const Session& s) {
    j = {{"id", s.id},
         {"created_at", healthdata::format_rfc3339(s.created_at)},
         {"date_string", s.date_string},
         {"state", dialogue::to_string(s.state)},
         {"history", s.history},
         {"strategy_log", s.strategy_log},
         {"tool_log", s.tool_log},
         {"events", s.events},
         {"user_profile", s.user_profile},
         {"shared_sources", s.shared_sources ? nlohmann::json(*s.shared_sources) : nlohmann::json()},
         {"turn_count", s.turn_count},
         {"next_event_number", s.next_event_number}};
}

void from_json(const nlohmann::json& j, Session& s) {
    s.id = j.at("id").get<std::string>();
    s.created_at = time_from(j.at("created_at"));
    s.date_string = j.at("date_string").get<std::string>();
    s.state = state_from(j.at("state"));
    s.history = j.at("history").get<std::vector<llm::ChatMessage>>();
    s.strategy_log = j.at("strategy_log").get<std::vector<StrategyLogEntry>>();
    s.tool_log = j.at("tool_log").get<std::vector<ToolLogEntry>>();
    s.events = j.at("events").get<std::vector<tools::VisualizationEvent>>();
    s.user_profile = j.at("user_profile").get<std::string>();
    s.shared_sources.reset();
    if (!j.at("shared_sources").is_null()) s.shared_sources = j.at("shared_sources").get<std::set<std::string>>();
    s.turn_count = j.at("turn_count").get<std::size_t>();
    s.next_event_number = j.at("next_event_number").get<std::size_t>();
}

std::string export_transcript(const Session& session) {
    std::string out;
    auto block = [&out](std::string_view prefix, std::string_view text) {
        out += prefix;
        out += ": ";
        for (char c : text) {
            out += c;
            if (c == '\n') out += "  ";
        }
        out += '\n';
    };
    for (const auto& m : session.history) {
        switch (m.role) {
            case llm::Role::System: block("system", m.content); break;
            case llm::Role::User: block("user", m.content); break;
            case llm::Role::Assistant:
                if (!m.content.empty()) block("assistant", m.content);
                for (const auto& call : m.tool_calls) {
                    std::string args;
                    for (const auto& [k, v] : call.arguments) {
                        if (!args.empty()) args += ", ";
                        args += fmt::format("{}=\"{}\"", k, v);
                    }
                    block("call", fmt::format("{}({})", call.name, args));
                }
                break;
            case llm::Role::Tool: block("tool", m.content); break;
        }
    }
    return out;
}

bool is_valid_session_id(std::string_view id) noexcept {
    return !id.empty() && id.size() <= 128 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-' || c == '_';
    });
}

SessionStore::SessionStore(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(directory_);
}

std::filesystem::path SessionStore::path_for(const std::string& id) const {
    if (!is_valid_session_id(id)) throw SessionNotFoundError(id);
    return directory_ / (id + ".json");
}

void SessionStore::save(const Session& session) const {
    const nlohmann::json body = session;
    const nlohmann::json document{{"format", kFormat}, {"checksum", util::sha256_hex(body.dump())}, {"session", body}};
    const auto target = path_for(session.id);
    auto temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write session file {}", temp.string()));
        out << document.dump(1) << '\n';
        out.flush();
        if (!out) throw std::runtime_error(fmt::format("failed writing session file {}", temp.string()));
    }
    std::filesystem::rename(temp, target);
}

Session SessionStore::load(const std::string& id) const {
    const auto path = path_for(id);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SessionNotFoundError(id);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        const auto document = nlohmann::json::parse(buffer.str());
        const auto& body = document.at("session");
        if (util::sha256_hex(body.dump()) != document.at("checksum").get<std::string>()) {
            throw SessionCorruptError(fmt::format("session '{}' fails its checksum", id));
        }
        auto session = body.get<Session>();
        if (session.id != id) throw SessionCorruptError(fmt::format("session file '{}' holds id '{}'", id, session.id));
        return session;
    } catch (const SessionCorruptError&) {
        throw;
    } catch (const std::exception& e) {
        throw SessionCorruptError(fmt::format("session '{}' is unreadable: {}", id, e.what()));
    }
}

bool SessionStore::exists(const std::string& id) const {
    return is_valid_session_id(id) && std::filesystem::exists(path_for(id));
}

std::vector<std::string> SessionStore::list() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
        if (entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace coach::orchestrator
