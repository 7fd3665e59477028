#include "coach/orchestrator/orchestrator.hpp"

#include <random>

#include <absl/time/civil_time.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "coach/dialogue/classifier.hpp"
#include "coach/llm/errors.hpp"
#include "coach/llm/gateway.hpp"
#include "coach/mi/chain.hpp"
#include "coach/tools/chain.hpp"
#include "coach/tools/executor.hpp"

namespace coach::orchestrator {

namespace {

std::string random_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    return fmt::format("{:016x}", rng());
}

/// ResponseGenerate without tools: used once the tool budget is spent and
/// for the follow-up to a forced visualization.
llm::ChatMessage generate_without_tools(const Session& session,
                                        mi::InternalStrategy strategy,
                                        llm::Provider& provider,
                                        const prompts::ChainOptions& options) {
    prompts::PromptContext context{.history = session.history,
                                   .state = session.state,
                                   .strategy = strategy,
                                   .date_string = options.date_string};
    auto request = prompts::assemble(prompts::Stage::ResponseGenerate, context, options.prompts(), options.model);
    request.tools.clear();
    return llm::complete(request, provider);
}

}  // namespace

std::vector<llm::ChatMessage> TurnOutput::messages() const {
    std::vector<llm::ChatMessage> out;
    for (const auto& item : items) {
        if (const auto* m = std::get_if<MessageItem>(&item)) out.push_back(m->message);
    }
    return out;
}

std::vector<std::string> TurnOutput::event_ids() const {
    std::vector<std::string> out;
    for (const auto& item : items) {
        if (const auto* v = std::get_if<VisualizationItem>(&item)) out.push_back(v->event_id);
    }
    return out;
}

Orchestrator::Orchestrator(const healthdata::HealthStore& store,
                           llm::Provider& provider,
                           const SessionStore* sessions,
                           OrchestratorOptions options)
    : store_(store), provider_(provider), sessions_(sessions), options_(std::move(options)) {
    if (!options_.id_generator) options_.id_generator = random_id;
}

Session Orchestrator::create_session(std::optional<std::set<std::string>> shared_sources,
                                     std::string user_profile) const {
    Session session;
    session.id = options_.id_generator();
    session.created_at = options_.clock();
    const auto local = absl::ToCivilDay(healthdata::to_absl(session.created_at), store_.zone().tz());
    session.date_string = prompts::format_date_string(local);
    session.shared_sources = std::move(shared_sources);
    session.user_profile = std::move(user_profile);
    if (sessions_) sessions_->save(session);
    return session;
}

prompts::ChainOptions Orchestrator::chain_options(const Session& session) const {
    return prompts::ChainOptions{options_.catalog, options_.model, session.date_string};
}

llm::CompletionRequest Orchestrator::assemble_prompt(prompts::Stage stage,
                                                     const Session& session,
                                                     const PromptExtras& extras) const {
    const auto chain = chain_options(session);
    prompts::PromptContext context{.history = session.history,
                                   .state = session.state,
                                   .strategy = extras.strategy,
                                   .candidate = extras.candidate,
                                   .date_string = chain.date_string};
    return prompts::assemble(stage, context, chain.prompts(), chain.model);
}

TurnOutput Orchestrator::handle_user_message(Session& session, std::string_view text) const {
    Session working = session;
    TurnOutput out;
    run_turn(working, text, out);
    ++working.turn_count;
    if (sessions_) sessions_->save(working);
    session = std::move(working);
    return out;
}

void Orchestrator::run_turn(Session& session, std::string_view text, TurnOutput& out) const {
    const auto chain = chain_options(session);
    const tools::ToolExecutor executor(store_, session.shared_sources);
    const std::size_t turn = session.turn_count;

    auto emit_message = [&](llm::ChatMessage message, mi::InternalStrategy strategy) {
        session.history.push_back(message);
        if (is_visible_assistant(message)) {
            session.strategy_log.push_back({turn, session.history.size() - 1, session.state, strategy});
            out.items.emplace_back(MessageItem{std::move(message), strategy});
        }
    };

    auto run_call = [&](const llm::ToolCall& call, bool forced) {
        const auto event_id = fmt::format("viz-{}", session.next_event_number);
        auto result = executor.execute(call, event_id);
        session.history.push_back(llm::ChatMessage::tool(call.id, result.text));
        ToolLogEntry log{turn, session.state, call.name, forced, result.ok, std::nullopt};
        if (result.event) {
            ++session.next_event_number;
            log.event_id = event_id;
            session.events.push_back(std::move(*result.event));
            out.items.emplace_back(VisualizationItem{event_id});
        }
        session.tool_log.push_back(std::move(log));
    };

    // (1) user message, (2) state classification.
    session.history.push_back(llm::ChatMessage::user(std::string(text)));
    const auto decision = dialogue::classify_advance(session.history, session.state, provider_, chain);
    const auto next = dialogue::apply(session.state, decision);
    if (next != session.state) {
        out.items.emplace_back(StateChange{session.state, next});
        session.state = next;
    }

    // (3) strategy, (4) response.
    const auto strategy = mi::predict_strategy(session.history, session.state, provider_, chain);
    auto response = mi::generate_response(session.history, session.state, strategy, provider_, chain).message;

    // (5) tool loop.
    std::size_t executed = 0;
    bool used_tools = false;
    while (response.has_tool_calls()) {
        used_tools = true;
        const auto calls = response.tool_calls;
        emit_message(std::move(response), strategy);
        for (const auto& call : calls) {
            if (executed < options_.max_tool_calls) {
                run_call(call, false);
                ++executed;
            } else {
                session.history.push_back(llm::ChatMessage::tool(call.id, std::string(kToolLimitText)));
                session.tool_log.push_back({turn, session.state, call.name, false, false, std::nullopt});
            }
        }
        if (executed < options_.max_tool_calls) {
            response = mi::generate_response(session.history, session.state, strategy, provider_, chain).message;
        } else {
            response = generate_without_tools(session, strategy, provider_, chain);
        }
    }

    // (6) data augmentation for responses that used no tool.
    if (used_tools) {
        emit_message(std::move(response), strategy);
        return;
    }
    const auto need =
        tools::predict_tool_need(session.history, session.state, strategy, response, provider_, chain);
    emit_message(response, strategy);
    if (need == tools::ToolNeedDecision::No) return;

    const auto history_before_candidate =
        std::span<const llm::ChatMessage>(session.history).first(session.history.size() - 1);
    std::optional<llm::ToolCall> call;
    try {
        call = tools::generate_forced_tool_call(
            history_before_candidate, session.state, strategy, response, provider_,
            [&](const llm::ToolCall& c) {
                const auto validation = executor.validate(c);
                if (!validation.ok()) return validation.error;
                if (session.shared_sources && !session.shared_sources->contains(validation.call->source.str())) {
                    return fmt::format("error: source not shared: {}", validation.call->source.str());
                }
                return std::string{};
            },
            chain);
    } catch (const llm::ContractViolationError& e) {
        spdlog::warn("abandoning data augmentation: {}", e.what());
    }
    if (!call) return;

    llm::ChatMessage call_message = llm::ChatMessage::assistant("");
    call_message.tool_calls.push_back(*call);
    session.history.push_back(std::move(call_message));
    run_call(*call, true);
    emit_message(generate_without_tools(session, strategy, provider_, chain), strategy);
}

}  // namespace coach::orchestrator
