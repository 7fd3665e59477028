#include "coach/eval/counterfactual.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "coach/llm/gateway.hpp"
#include "coach/orchestrator/orchestrator.hpp"

namespace coach::eval {

namespace {

constexpr std::array<BarrierPersona, kBarrierCount> kPersonas{{
    {"Feeling discomfort",
     "I haven't exercised in a while and I'm worried about being sore and feeling pain from not having exercised in "
     "a long time."},
    {"Feeling unmotivated", "On most days, it's hard for me to find the motivation to exercise."},
    {"No energy", "I feel too tired to exercise when I get back from work. I just don't have the energy to exercise."},
    {"No time",
     "I just feel like I don't have time to exercise. Between work and my family responsibilities, I'm always so "
     "busy."},
    {"Feeling sick",
     "I had been sick for the last few weeks and that has thrown me off track. Now it feels hard to get back into my "
     "routine."},
    {"Feeling stressed", "I've been feeling quite stressed lately and that's been preventing me from getting exercise."},
    {"Feeling ashamed",
     "I’ve never really exercised before and I worry about what others might think of me. I feel ashamed."},
    {"Feeling unsafe",
     "I don’t feel safe going for a workout outside in my neighborhood, which makes it hard to stay active."},
    {"Feeling unsupported or alone", "I don't have anyone I can exercise with together. I feel like I’m doing this alone."},
    {"Weather", "It's difficult to get exercise because it's really cold and dark outside this time of year."},
}};

const healthdata::HealthStore& empty_store() {
    static const healthdata::HealthStore store;
    return store;
}

std::string join_visible(const std::vector<llm::ChatMessage>& messages) {
    std::string out;
    for (const auto& m : messages) {
        if (m.content.empty()) continue;
        if (!out.empty()) out += "\n\n";
        out += m.content;
    }
    return out;
}

}  // namespace

std::span<const BarrierPersona, kBarrierCount> barrier_personas() noexcept { return kPersonas; }

void validate_seed(const SeedHistory& seed) {
    if (seed.messages.size() != kSeedLength) {
        throw std::invalid_argument(
            fmt::format("seed '{}' has {} messages, expected {}", seed.id, seed.messages.size(), kSeedLength));
    }
    for (std::size_t i = 0; i < seed.messages.size(); ++i) {
        const auto expected = i % 2 == 0 ? llm::Role::Assistant : llm::Role::User;
        if (seed.messages[i].role != expected || seed.messages[i].content.empty()) {
            throw std::invalid_argument(fmt::format("seed '{}' message {} must be a non-empty {} message", seed.id, i,
                                                    llm::to_string(expected)));
        }
    }
}

SeedHistory load_seed(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read seed history " + path.string());
    const auto j = nlohmann::json::parse(in);
    SeedHistory seed;
    seed.id = j.value("id", path.stem().string());
    seed.messages = j.at("messages").get<std::vector<llm::ChatMessage>>();
    if (j.contains("state")) {
        const auto state = dialogue::parse_state(j.at("state").get<std::string>());
        if (!state) throw std::invalid_argument("seed " + seed.id + " has an unknown state");
        seed.state = *state;
    }
    seed.date_string = j.value("date_string", "");
    validate_seed(seed);
    return seed;
}

std::vector<SeedHistory> load_seeds(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<SeedHistory> seeds;
    for (const auto& f : files) seeds.push_back(load_seed(f));
    return seeds;
}

std::string_view to_string(Agent agent) noexcept { return agent == Agent::Full ? "full" : "baseline"; }

std::optional<Agent> parse_agent(std::string_view text) noexcept {
    if (text == "full") return Agent::Full;
    if (text == "baseline") return Agent::Baseline;
    return std::nullopt;
}

const AgentAggregate* CounterfactualResult::aggregate(Agent agent) const {
    const auto it = std::find_if(aggregates.begin(), aggregates.end(), [&](const auto& a) { return a.agent == agent; });
    return it == aggregates.end() ? nullptr : &*it;
}

AgentAggregate aggregate_cells(Agent agent, std::span<const Cell> cells) {
    AgentAggregate a;
    a.agent = agent;
    std::vector<CodeSet> sets;
    Counts<kExternalCodeSlots> containing{};
    for (const auto& c : cells) {
        ++a.cells;
        if (!c.ok) {
            ++a.failed;
            continue;
        }
        if (!c.coded.coded) {
            ++a.uncoded;
            continue;
        }
        sets.push_back(c.coded.merged);
        for (auto code : c.coded.merged) ++containing[index_of(code)];
    }
    a.coded = sets.size();
    a.consistency = consistency_summary(sets);
    for (std::size_t i = 0; i < kExternalCodeSlots; ++i) {
        a.containment[i] = a.coded == 0 ? 0.0 : static_cast<double>(containing[i]) / a.coded;
    }
    return a;
}

CounterfactualResult counterfactual_run(std::span<const SeedHistory> seeds,
                                        std::span<const BarrierPersona> personas,
                                        llm::Provider& agent_provider,
                                        llm::Provider& coder,
                                        const CounterfactualOptions& options) {
    for (const auto& seed : seeds) validate_seed(seed);

    CounterfactualResult result;
    std::vector<std::pair<std::size_t, std::size_t>> origin;  // seed, persona
    for (auto agent : options.agents) {
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            for (std::size_t p = 0; p < personas.size(); ++p) {
                for (std::size_t r = 0; r < options.repeats; ++r) {
                    result.cells.push_back(Cell{seeds[s].id, std::string(personas[p].name), agent, r});
                    origin.emplace_back(s, p);
                }
            }
        }
    }

    const auto& store = options.store ? *options.store : empty_store();
    orchestrator::OrchestratorOptions orchestrator_options;
    orchestrator_options.model = options.model;
    orchestrator_options.catalog = options.catalog;
    const orchestrator::Orchestrator pipeline(store, agent_provider, nullptr, orchestrator_options);
    const auto& catalog = options.catalog ? *options.catalog : prompts::PromptCatalog::embedded();

    auto run_cell = [&](std::size_t index) {
        auto& cell = result.cells[index];
        const auto& seed = seeds[origin[index].first];
        const auto& persona = personas[origin[index].second];
        const auto date = seed.date_string.empty() ? options.date_string : seed.date_string;
        try {
            if (cell.agent == Agent::Full) {
                orchestrator::Session session;
                session.id = fmt::format("cf-{}-{}", seed.id, cell.repeat);
                session.date_string = date;
                session.state = seed.state;
                session.history = seed.messages;
                const auto output = pipeline.handle_user_message(session, persona.message);
                cell.response = join_visible(output.messages());
            } else {
                auto history = seed.messages;
                history.push_back(llm::ChatMessage::user(std::string(persona.message)));
                const auto request = prompts::assemble_baseline(history, date, catalog, options.model);
                cell.response = llm::complete(request, agent_provider).content;
            }
            cell.ok = !cell.response.empty();
            if (!cell.ok) cell.error = "empty response";
        } catch (const std::exception& e) {
            cell.error = e.what();
            spdlog::warn("counterfactual cell {}/{}/{} failed: {}", to_string(cell.agent), cell.history_id,
                         cell.persona, e.what());
            return;
        }
        if (cell.ok) cell.coded = code_utterance(cell.response, coder, options.coder);
    };

    std::atomic<std::size_t> next{0};
    const auto workers = std::max<std::size_t>(1, std::min(options.parallelism, result.cells.size()));
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < result.cells.size(); i = next++) run_cell(i);
        });
    }
    for (auto& t : threads) t.join();

    for (auto agent : options.agents) {
        std::vector<Cell> cells;
        std::copy_if(result.cells.begin(), result.cells.end(), std::back_inserter(cells),
                     [&](const Cell& c) { return c.agent == agent; });
        result.aggregates.push_back(aggregate_cells(agent, cells));
    }
    return result;
}

}  // namespace coach::eval
