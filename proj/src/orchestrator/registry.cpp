#include "coach/orchestrator/registry.hpp"

namespace coach::orchestrator {

SessionRegistry::SessionRegistry(const Orchestrator& orchestrator, const SessionStore& store)
    : orchestrator_(orchestrator), store_(store) {}

Session SessionRegistry::create(std::optional<std::set<std::string>> shared_sources, std::string user_profile) {
    auto session = orchestrator_.create_session(std::move(shared_sources), std::move(user_profile));
    store_.save(session);
    auto e = std::make_shared<Entry>();
    e->session = session;
    std::lock_guard lock(mutex_);
    entries_[session.id] = std::move(e);
    return session;
}

std::shared_ptr<SessionRegistry::Entry> SessionRegistry::entry(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(id); it != entries_.end()) return it->second;
    auto e = std::make_shared<Entry>();
    e->session = store_.load(id);
    entries_[id] = e;
    return e;
}

Session SessionRegistry::get(const std::string& id) {
    auto e = entry(id);
    std::lock_guard lock(e->data);
    return e->session;
}

TurnOutput SessionRegistry::post(const std::string& id, std::string_view text, Session* after) {
    auto e = entry(id);
    std::unique_lock turn(e->turn, std::try_to_lock);
    if (!turn.owns_lock()) throw TurnInFlightError(id);

    Session working;
    {
        std::lock_guard lock(e->data);
        working = e->session;
    }
    auto output = orchestrator_.handle_user_message(working, text);
    std::lock_guard lock(e->data);
    e->session = working;
    if (after) *after = std::move(working);
    return output;
}

}  // namespace coach::orchestrator
