// Acceptance runner: one PASS/FAIL line per criterion. Exit status is
// non-zero when any gating criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "coach/dialogue/classifier.hpp"
#include "coach/eval/counterfactual.hpp"
#include "coach/eval/metrics.hpp"
#include "coach/healthdata/aggregate.hpp"
#include "coach/healthdata/render.hpp"
#include "coach/llm/cassette.hpp"
#include "coach/llm/live_provider.hpp"
#include "coach/orchestrator/orchestrator.hpp"
#include "coach/prompts/catalog.hpp"
#include "coach/util/sha256.hpp"
#include "support.hpp"

namespace {

using namespace coach;
using Clock = std::chrono::steady_clock;

// Tolerances and limits.
constexpr double kAggregationRelTol = 1e-9;
constexpr double kShareSumTol = 1e-9;
constexpr double kStateMachineSeconds = 10.0;
constexpr double kAggregationSeconds = 60.0;
constexpr int kFuzzedVerdicts = 1000;
constexpr int kAggregationSets = 500;
constexpr std::size_t kMaxSamplesPerSet = 10'000;
constexpr std::size_t kCellsPerAgent = 160;
constexpr std::size_t kLiveMinCells = 40;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(std::string why) {
        if (pass) detail = std::move(why);
        pass = false;
    }
    void check(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// State machine

Outcome state_machine() {
    Outcome out;
    const auto started = Clock::now();
    using dialogue::DialogueStateId;

    // Traversal: a classifier that always says completed walks every state once.
    llm::ScriptedProvider provider([](const llm::CompletionRequest& r) {
        if (r.stage == "state_classify") return llm::ProviderReply::text("completed");
        if (r.stage == "strategy_predict") return llm::ProviderReply::text("Question");
        if (r.stage == "tool_need_predict") return llm::ProviderReply::text("no");
        return llm::ProviderReply::text("How has your week been?");
    });
    const healthdata::HealthStore store;
    const orchestrator::Orchestrator orch(store, provider, nullptr, testing::demo::options());
    auto session = orch.create_session(std::nullopt);
    std::vector<DialogueStateId> visited{session.state};
    for (int turn = 0; turn < 9; ++turn) {
        const auto output = orch.handle_user_message(session, "ok");
        for (const auto& item : output.items) {
            if (const auto* change = std::get_if<orchestrator::StateChange>(&item)) {
                out.check(change->from == visited.back(), "state change does not start from the current state");
                visited.push_back(change->to);
            }
        }
    }
    out.check(visited.size() == dialogue::kStateCount, fmt::format("visited {} states", visited.size()));
    for (std::size_t i = 0; i < visited.size() && i < dialogue::kStateCount; ++i) {
        out.check(visited[i] == dialogue::kAllStates[i], "states visited out of order");
    }
    out.check(session.state == DialogueStateId::GoodBye, "GoodBye is not terminal");

    // Fuzz: valid verdicts advance by exactly one, anything else holds.
    std::mt19937 rng(20240304);
    const std::vector<llm::ChatMessage> history{llm::ChatMessage::assistant("Hi!"), llm::ChatMessage::user("Hello")};
    const std::string garbage_chars = "abdfghijkmnqrsuvwxyz0123456789 .,!?-_\n";
    for (int i = 0; i < kFuzzedVerdicts; ++i) {
        const auto state = dialogue::kAllStates[rng() % dialogue::kStateCount];
        std::string reply;
        bool valid = false;
        switch (rng() % 3) {
            case 0: {
                reply = "completed";
                for (auto& c : reply) {
                    if (rng() % 2) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                }
                if (rng() % 2) reply += ".";
                if (rng() % 2) reply = "  " + reply + "\n";
                valid = true;
                break;
            }
            case 1: reply = rng() % 2 ? "continue" : "Continue."; break;
            default: {
                // No 'c', 'e', 'l', 'o', 'p', 't': cannot spell either verdict.
                const std::size_t n = rng() % 40;
                for (std::size_t k = 0; k < n; ++k) reply += garbage_chars[rng() % garbage_chars.size()];
            }
        }
        llm::ScriptedProvider p([&](const llm::CompletionRequest&) { return llm::ProviderReply::text(reply); });
        const auto next = dialogue::apply(state, dialogue::classify_advance(history, state, p));
        const auto expected = valid ? dialogue::successor(state) : state;
        if (next != expected) {
            out.fail(fmt::format("reply '{}' moved {} to {}", reply, dialogue::to_string(state), dialogue::to_string(next)));
            break;
        }
        out.check(dialogue::index_of(next) >= dialogue::index_of(state), "state moved backwards");
        out.check(dialogue::index_of(next) <= dialogue::index_of(state) + 1, "state skipped ahead");
    }

    const double elapsed = seconds_since(started);
    out.check(elapsed < kStateMachineSeconds, fmt::format("took {:.2f}s", elapsed));
    if (out.pass) out.detail = fmt::format("{} states in order, {} fuzzed verdicts, {:.2f}s", visited.size(), kFuzzedVerdicts, elapsed);
    return out;
}

// ---------------------------------------------------------------------------
// Aggregation oracle

/// Bucket start in seconds, computed with plain calendar arithmetic for a
/// fixed UTC offset.
std::int64_t oracle_bucket_start(std::int64_t t, int offset_seconds, healthdata::Granularity g) {
    using namespace std::chrono;
    const std::int64_t local = t + offset_seconds;
    const std::int64_t day = local / 86400;
    switch (g) {
        case healthdata::Granularity::Hour: return local / 3600 * 3600 - offset_seconds;
        case healthdata::Granularity::Day: return day * 86400 - offset_seconds;
        case healthdata::Granularity::Week: return (day - (day + 3) % 7) * 86400 - offset_seconds;
        case healthdata::Granularity::Month: {
            const year_month_day ymd{sys_days{days{day}}};
            const sys_days first{ymd.year() / ymd.month() / 1};
            return static_cast<std::int64_t>(first.time_since_epoch().count()) * 86400 - offset_seconds;
        }
    }
    return 0;
}

Outcome aggregation_oracle() {
    Outcome out;
    const auto started = Clock::now();
    using healthdata::Timestamp;
    const auto& catalog = healthdata::SourceCatalog::builtin();
    const std::array<const healthdata::SourceInfo*, 2> sources{catalog.find("health.stepcount"),
                                                               catalog.find("health.heartrate")};
    const std::array<std::pair<const char*, int>, 3> zones{{{"+00:00", 0}, {"+05:30", 19800}, {"-08:00", -28800}}};
    const std::array<const char*, 3> devices{"iPhone", "Apple Watch", "Oura"};
    const std::int64_t base = 1704067200;  // 2024-01-01T00:00:00Z
    const auto ts = [](std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; };

    std::mt19937_64 rng(500);
    std::size_t total_samples = 0;
    for (int set = 0; set < kAggregationSets && out.pass; ++set) {
        const auto& info = *sources[rng() % sources.size()];
        const auto& [zone_name, offset] = zones[rng() % zones.size()];
        const auto zone = healthdata::Zone::load(zone_name);
        const auto g = static_cast<healthdata::Granularity>(rng() % 4);

        const std::size_t n = rng() % (kMaxSamplesPerSet + 1);
        total_samples += n;
        std::vector<healthdata::HealthSample> samples(n);
        std::vector<std::int64_t> starts(n);
        for (std::size_t i = 0; i < n; ++i) {
            starts[i] = base + static_cast<std::int64_t>(rng() % (120ull * 86400));
            auto& s = samples[i];
            s.source = info.name;
            s.start = ts(starts[i]);
            s.end = s.start;
            s.value = 1.0 + std::uniform_real_distribution<double>(0, 5000)(rng);
            s.unit = info.unit;
            s.device = devices[rng() % devices.size()];
        }
        std::int64_t lo = base + static_cast<std::int64_t>(rng() % (60ull * 86400));
        std::int64_t hi = lo + static_cast<std::int64_t>(rng() % (90ull * 86400));
        const healthdata::TimeRange range{ts(lo), ts(hi)};

        struct Acc {
            double sum = 0;
            std::size_t count = 0;
        };
        std::map<std::pair<std::int64_t, std::string>, Acc> expected;
        std::size_t in_range = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (starts[i] < lo || starts[i] > hi) continue;
            ++in_range;
            auto& acc = expected[{oracle_bucket_start(starts[i], offset, g), samples[i].device}];
            acc.sum += samples[i].value;
            ++acc.count;
        }

        const auto buckets = healthdata::aggregate_samples(samples, info, range, g, zone);
        if (buckets.size() != expected.size()) {
            out.fail(fmt::format("set {}: {} buckets, oracle has {}", set, buckets.size(), expected.size()));
            break;
        }
        std::size_t assigned = 0;
        auto it = expected.begin();
        for (const auto& b : buckets) {
            const auto start_s = std::chrono::duration_cast<std::chrono::seconds>(b.bucket_start.time_since_epoch()).count();
            if (it->first.first != start_s || it->first.second != b.device) {
                out.fail(fmt::format("set {}: bucket order or key differs", set));
                break;
            }
            const double want = info.aggregation == healthdata::Aggregation::Mean
                                    ? it->second.sum / static_cast<double>(it->second.count)
                                    : it->second.sum;
            if (b.entries != it->second.count) out.fail(fmt::format("set {}: entry count differs", set));
            if (std::abs(b.value - want) > kAggregationRelTol * std::abs(want)) {
                out.fail(fmt::format("set {}: value {} vs oracle {}", set, b.value, want));
            }
            assigned += b.entries;
            ++it;
        }
        out.check(assigned == in_range, fmt::format("set {}: {} samples assigned, {} in range", set, assigned, in_range));
    }
    const double elapsed = seconds_since(started);
    out.check(elapsed < kAggregationSeconds, fmt::format("took {:.2f}s", elapsed));
    if (out.pass) out.detail = fmt::format("{} sets, {} samples, {:.2f}s", kAggregationSets, total_samples, elapsed);
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

healthdata::Timestamp utc(int y, unsigned m, unsigned d, int hh = 0, int mm = 0, int ss = 0) {
    using namespace std::chrono;
    return time_point_cast<milliseconds>(sys_days{year{y} / month{m} / day{d}}) + hours{hh} + minutes{mm} + seconds{ss};
}

Outcome rendering_goldens() {
    Outcome out;
    using healthdata::Granularity;
    const healthdata::TimeRange feb23{utc(2024, 2, 23), utc(2024, 2, 23, 23, 59, 59)};

    const auto day = testing::fixture_store({"steps_day.ndjson"});
    const auto text = day->render_describe(day->catalog().require("health.stepcount"), feb23, Granularity::Day);
    const std::string day_line = "2024-02-23-00-00 to 2024-02-23-23-59: 10968.00 steps from Apple Watch (1 entries)";
    out.check(text.substr(text.find('\n') + 1) == day_line, "day line differs: " + text);

    const auto hourly = testing::fixture_store({"steps_hourly.ndjson"});
    const auto buckets = hourly->aggregate(hourly->catalog().require("health.stepcount"), feb23, Granularity::Hour);
    out.check(healthdata::render_bucket_lines(buckets, "steps", hourly->zone(), 4) ==
                  "2024-02-23-00-00 to 2024-02-23-00-59: 13.00 steps from iPhone (1 entries)\n"
                  "2024-02-23-01-00 to 2024-02-23-01-59: 34.00 steps from Apple Watch (1 entries)\n"
                  "2024-02-23-08-00 to 2024-02-23-08-59: 122.00 steps from Apple Watch (1 entries)\n"
                  "2024-02-23-09-00 to 2024-02-23-09-59: 988.00 steps from Apple Watch (19 entries)\n"
                  "... (output truncated)",
              "hourly lines differ");

    const auto workouts = testing::fixture_store({"workouts_march.ndjson"});
    out.check(workouts->summarize_workouts({utc(2024, 3, 1), utc(2024, 3, 31, 23, 59, 59)}) ==
                  " - cycling: 29 workouts, 21.14 mins/workout, 613.00 mins  (10h13m)  total\n"
                  " - running: 7 workouts, 71.14 mins/workout, 497.96 mins  (8h17m)  total",
              "workout summary differs");
    out.check(workouts->summarize_workouts({utc(2024, 4, 1), utc(2024, 4, 30, 23, 59, 59)}) ==
                  healthdata::kNoWorkoutsText,
              "empty workout summary differs");
    if (out.pass) out.detail = "day, hourly (truncated) and workout summaries byte-equal";
    return out;
}

// ---------------------------------------------------------------------------
// Prompt assembly

Outcome prompt_goldens() {
    Outcome out;
    using prompts::Stage;
    using dialogue::DialogueStateId;
    const std::filesystem::path dir = COACH_PROMPT_DIR;
    const auto& embedded = prompts::PromptCatalog::embedded();

    const auto manifest = nlohmann::json::parse(testing::read_file(dir / "manifest.json"));
    std::size_t files = 0;
    for (const auto& [name, hash] : manifest.at("files").items()) {
        ++files;
        out.check(util::sha256_hex(testing::read_file(dir / name)) == hash.get<std::string>(), name + " checksum differs");
    }
    out.check(embedded.checksum() == util::sha256_hex(testing::read_file(dir / "manifest.json")),
              "embedded catalog is not the committed revision");

    const std::vector<llm::ChatMessage> history{llm::ChatMessage::assistant("Hi, I'm your coach."),
                                                llm::ChatMessage::user("I want to walk more.")};
    const auto candidate = llm::ChatMessage::assistant("How many steps do you take on a typical day?");
    const std::string date = "2024-03-04 Monday";
    struct Case {
        Stage stage;
        DialogueStateId state;
        std::optional<mi::InternalStrategy> strategy;
        const llm::ChatMessage* candidate;
    };
    const std::vector<Case> cases{
        {Stage::StateClassify, DialogueStateId::Barriers, std::nullopt, nullptr},
        {Stage::StrategyPredict, DialogueStateId::Motivation, std::nullopt, nullptr},
        {Stage::ResponseGenerate, DialogueStateId::Advice, mi::InternalStrategy::Reframe, nullptr},
        {Stage::ToolNeedPredict, DialogueStateId::Program, mi::InternalStrategy::Question, &candidate},
        {Stage::ToolCallGenerate, DialogueStateId::GoalSetting, mi::InternalStrategy::Support, &candidate},
    };
    for (const auto& c : cases) {
        const prompts::PromptContext context{history, c.state, c.strategy, c.candidate, date};
        const auto request = prompts::assemble(c.stage, context);
        const auto expected = testing::oracle::expected_messages(c.stage, history, c.state, c.strategy, c.candidate, date);
        out.check(request.messages == expected, std::string(prompts::to_string(c.stage)) + " structure differs");
    }
    out.check(prompts::assemble(Stage::ToolCallGenerate, {history, DialogueStateId::Program, mi::InternalStrategy::Affirm,
                                                          &candidate, date})
                      .forced_tool == "visualize",
              "tool call stage does not force visualize");
    if (out.pass) out.detail = fmt::format("5 stages match, {} asset checksums verified", files);
    return out;
}

// ---------------------------------------------------------------------------
// MI taxonomy

Outcome mi_taxonomy() {
    Outcome out;
    const std::set<std::string> consistent{"AdviseWithPermission", "Affirm",            "EmphasizeControl", "OpenQuestion",
                                           "SimpleReflection",     "ComplexReflection", "Reframe",          "Support"};
    const std::set<std::string> inconsistent{"AdviseWithoutPermission", "Confront", "Direct",
                                             "RaiseConcernWithoutPermission", "Warn"};
    const std::set<std::string> neutral{"ClosedQuestion",    "Facilitate", "Filler", "GivingInformation",
                                        "RaiseConcernWithPermission", "Structure"};
    std::size_t counts[3] = {};
    std::set<std::string> seen;
    for (const auto& info : eval::external_codes()) {
        const std::string id(info.identifier);
        seen.insert(id);
        const auto c = eval::classify_consistency(info.code);
        const auto want = consistent.contains(id)     ? eval::Consistency::Consistent
                          : inconsistent.contains(id) ? eval::Consistency::Inconsistent
                          : neutral.contains(id)      ? eval::Consistency::Neutral
                                                      : eval::Consistency::None;
        out.check(c == want, id + " has the wrong consistency class");
        if (c != eval::Consistency::None) ++counts[eval::consistency_slot(c)];
    }
    out.check(seen.size() == 19, fmt::format("{} external codes", seen.size()));
    out.check(counts[0] == 8 && counts[1] == 5 && counts[2] == 6,
              fmt::format("partition {}/{}/{}", counts[0], counts[1], counts[2]));

    const std::array<std::string_view, 11> strategies{"Advise with Permission", "Affirm", "Facilitate", "Filler",
                                                      "Giving Information",     "Question", "Raise Concern", "Reflect",
                                                      "Reframe",                "Support",  "Structure"};
    const auto catalog = mi::strategy_catalog();
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        out.check(catalog[i].display_name == strategies[i], fmt::format("strategy {} is {}", i, catalog[i].display_name));
    }
    if (out.pass) out.detail = "19 codes split 8/5/6, 11 internal strategies";
    return out;
}

// ---------------------------------------------------------------------------
// Replay determinism

Outcome replay_determinism() {
    Outcome out;
    const auto cassette = llm::Cassette::load(testing::fixture(std::string(testing::demo::kCassette)));
    const auto committed = testing::read_file(testing::fixture(std::string(testing::demo::kTranscript)));
    const auto committed_session =
        nlohmann::json::parse(testing::read_file(testing::fixture(std::string(testing::demo::kSessionJson))));
    std::vector<std::string> transcripts;
    for (int run = 0; run < 2; ++run) {
        llm::ReplayProvider replay(cassette);
        const auto store = testing::demo::store();
        const auto session = testing::demo::run(replay, *store);
        transcripts.push_back(orchestrator::export_transcript(session));
        out.check(nlohmann::json(session) == committed_session, fmt::format("run {} session differs", run + 1));
        std::set<dialogue::DialogueStateId> states;
        for (const auto& entry : session.strategy_log) states.insert(entry.state);
        out.check(states.size() == dialogue::kStateCount, fmt::format("run {} covers {} states", run + 1, states.size()));
    }
    out.check(transcripts[0] == transcripts[1], "two replays differ");
    out.check(transcripts[0] == committed, "replay differs from the committed transcript");
    if (out.pass) out.detail = fmt::format("{} cassette entries, {} transcript bytes", cassette->size(), committed.size());
    return out;
}

// ---------------------------------------------------------------------------
// Counterfactual harness

std::string coded_sentence(const std::string& prompt) {
    const std::string open = "coach utterance: ";
    const std::string close = "?\nStrategy:";
    const auto a = prompt.find(open);
    const auto b = prompt.find(close, a);
    if (a == std::string::npos || b == std::string::npos) return {};
    return prompt.substr(a + open.size(), b - a - open.size());
}

std::size_t persona_index(const llm::CompletionRequest& r) {
    const auto personas = eval::barrier_personas();
    for (auto it = r.messages.rbegin(); it != r.messages.rend(); ++it) {
        if (it->role != llm::Role::User) continue;
        for (std::size_t i = 0; i < personas.size(); ++i) {
            if (it->content == personas[i].message) return i;
        }
        break;
    }
    return personas.size();
}

Outcome counterfactual() {
    Outcome out;
    const auto seeds = eval::load_seeds(testing::fixture("seeds"));
    out.check(seeds.size() == 16, fmt::format("{} seed histories", seeds.size()));

    // Baseline: advice for every persona, plus praise for even personas.
    // Full pipeline: an open question.
    llm::ScriptedProvider agents([](const llm::CompletionRequest& r) {
        if (r.stage == "baseline") {
            std::string text = "You should plan a short walk each morning.";
            if (persona_index(r) % 2 == 0) text += " Great job reaching out about this.";
            return llm::ProviderReply::text(text);
        }
        if (r.stage == "state_classify") return llm::ProviderReply::text("continue");
        if (r.stage == "strategy_predict") return llm::ProviderReply::text("Question");
        if (r.stage == "tool_need_predict") return llm::ProviderReply::text("no");
        return llm::ProviderReply::text("What would make a walk feel easier for you?");
    });
    llm::ScriptedProvider coder([](const llm::CompletionRequest& r) {
        const auto sentence = coded_sentence(r.messages.at(0).content);
        if (sentence.starts_with("You should")) return llm::ProviderReply::text("[Advise Without Permission]");
        if (sentence.starts_with("Great job")) return llm::ProviderReply::text("[Affirm]");
        if (sentence.starts_with("What would")) return llm::ProviderReply::text("[Open Question]");
        return llm::ProviderReply::text("unknown");
    });
    const auto result = eval::counterfactual_run(seeds, eval::barrier_personas(), agents, coder);

    using C = eval::ExternalMICode;
    const auto* full = result.aggregate(eval::Agent::Full);
    const auto* baseline = result.aggregate(eval::Agent::Baseline);
    if (!full || !baseline) {
        out.fail("missing aggregate");
        return out;
    }
    for (const auto* a : {full, baseline}) {
        const auto name = std::string(eval::to_string(a->agent));
        out.check(a->cells == kCellsPerAgent, fmt::format("{}: {} cells", name, a->cells));
        out.check(a->failed == 0 && a->uncoded == 0 && a->coded == kCellsPerAgent, name + ": failed or uncoded cells");
    }
    // Hand-computed: baseline has 160 advice codes and 80 affirmations.
    const auto& bc = baseline->containment;
    out.check(bc[eval::index_of(C::AdviseWithoutPermission)] == 1.0, "baseline advice containment");
    out.check(bc[eval::index_of(C::Affirm)] == 0.5, "baseline affirm containment");
    out.check(bc[eval::index_of(C::OpenQuestion)] == 0.0, "baseline open question containment");
    out.check(baseline->consistency.counts == eval::Counts<3>{80, 160, 0}, "baseline consistency counts");
    out.check(baseline->consistency.shares == eval::Shares<3>{1.0 / 3.0, 2.0 / 3.0, 0.0}, "baseline consistency shares");

    const auto& fc = full->containment;
    out.check(fc[eval::index_of(C::OpenQuestion)] == 1.0, "full open question containment");
    out.check(fc[eval::index_of(C::AdviseWithoutPermission)] == 0.0, "full advice containment");
    out.check(full->consistency.counts == eval::Counts<3>{160, 0, 0}, "full consistency counts");
    out.check(full->consistency.shares == eval::Shares<3>{1.0, 0.0, 0.0}, "full consistency shares");
    if (out.pass) out.detail = fmt::format("{} cells per agent, shares exact", kCellsPerAgent);
    return out;
}

// ---------------------------------------------------------------------------
// Metrics oracle

/// Independent recount straight from the committed JSON files.
struct RecountedMetrics {
    std::size_t agent_messages = 0;
    std::map<std::string, std::size_t> states, strategies, tool_states;
    std::size_t tool_calls = 0;
    std::size_t coded = 0, uncoded = 0;
    std::map<std::string, std::size_t> containing;
    std::size_t consistent = 0, inconsistent = 0, neutral = 0, known = 0;
    std::map<std::size_t, std::tuple<std::size_t, std::size_t, std::size_t>> turns;  // transcripts, agent, user chars
};

Outcome metrics_oracle() {
    Outcome out;
    const auto dir = testing::fixture(std::string(testing::corpus::kMetricsDir));
    const auto coded_json =
        nlohmann::json::parse(testing::read_file(testing::fixture(std::string(testing::corpus::kCodedFile))));
    const auto coded = eval::coded_corpus_from_json(coded_json);

    const std::set<std::string> consistent{"AdviseWithPermission", "Affirm",            "EmphasizeControl", "OpenQuestion",
                                           "SimpleReflection",     "ComplexReflection", "Reframe",          "Support"};
    const std::set<std::string> inconsistent{"AdviseWithoutPermission", "Confront", "Direct",
                                             "RaiseConcernWithoutPermission", "Warn"};

    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());

    RecountedMetrics r;
    std::vector<eval::Transcript> corpus;
    for (const auto& path : files) {
        const auto session_json = nlohmann::json::parse(testing::read_file(path)).at("session");
        const std::string id = session_json.at("id");
        const auto& history = session_json.at("history");
        for (const auto& entry : session_json.at("strategy_log")) {
            ++r.agent_messages;
            ++r.states[entry.at("state")];
            ++r.strategies[entry.at("strategy")];
            const auto key = std::to_string(entry.at("message_index").get<std::size_t>());
            if (!coded_json.contains(id) || !coded_json.at(id).contains(key)) continue;
            const auto& c = coded_json.at(id).at(key);
            if (!c.at("coded").get<bool>()) {
                ++r.uncoded;
                continue;
            }
            ++r.coded;
            for (const auto& code : c.at("merged")) {
                const std::string name = code;
                ++r.containing[name];
                if (name == "Unknown") continue;
                ++r.known;
                if (consistent.contains(name)) ++r.consistent;
                else if (inconsistent.contains(name)) ++r.inconsistent;
                else ++r.neutral;
            }
        }
        for (const auto& call : session_json.at("tool_log")) {
            ++r.tool_calls;
            ++r.tool_states[call.at("state")];
        }
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> per_turn;
        long turn = -1;
        for (const auto& m : history) {
            const std::string role = m.at("role");
            const std::string content = m.value("content", "");
            if (role == "user") {
                ++turn;
                per_turn[turn].second += content.size();
            } else if (role == "assistant" && turn >= 0 && !content.empty()) {
                per_turn[turn].first += content.size();
            }
        }
        for (const auto& [t, chars] : per_turn) {
            auto& [count, agent, user] = r.turns[t];
            ++count;
            agent += chars.first;
            user += chars.second;
        }

        eval::Transcript t{eval::load_session_file(path), {}};
        if (const auto it = coded.find(id); it != coded.end()) t.coded = it->second;
        corpus.push_back(std::move(t));
    }
    out.check(corpus.size() == 3, fmt::format("{} transcripts", corpus.size()));
    out.check(r.coded > 0 && r.tool_calls > 0, "fixture corpus lacks coded responses or tool calls");

    const auto m = eval::transcript_metrics(corpus);
    const auto same = [&](double got, std::size_t num, std::size_t den, const std::string& what) {
        const double want = den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
        out.check(std::abs(got - want) <= 1e-12, fmt::format("{}: {} vs {}", what, got, want));
    };
    const auto sums_to_one = [&](auto shares, const std::string& what) {
        double sum = 0;
        for (double s : shares) sum += s;
        out.check(std::abs(sum - 1.0) <= kShareSumTol, fmt::format("{} shares sum to {}", what, sum));
    };

    out.check(m.agent_messages == r.agent_messages, "agent message count");
    for (const auto state : dialogue::kAllStates) {
        const std::string name(dialogue::to_string(state));
        const auto i = dialogue::index_of(state);
        same(m.state_share[i], r.states[name], r.agent_messages, "state share " + name);
        same(m.state_mean_agent_messages[i], r.states[name], corpus.size(), "state mean " + name);
        same(m.state_tool_share[i], r.tool_states[name], r.tool_calls, "tool share " + name);
    }
    for (const auto& s : mi::strategy_catalog()) {
        const std::string name(s.identifier);
        same(m.strategy_share[mi::index_of(s.id)], r.strategies[name], r.agent_messages, "strategy share " + name);
    }
    out.check(m.coded_responses == r.coded && m.uncoded_responses == r.uncoded, "coded response counts");
    for (const auto& info : eval::external_codes()) {
        const std::string name(info.identifier);
        same(m.code_containment[eval::index_of(info.code)], r.containing[name], r.coded, "containment " + name);
        same(m.code_share[eval::index_of(info.code)], r.containing[name], r.known, "code share " + name);
    }
    same(m.consistency_share[0], r.consistent, r.known, "consistent share");
    same(m.consistency_share[1], r.inconsistent, r.known, "inconsistent share");
    same(m.consistency_share[2], r.neutral, r.known, "neutral share");
    same(m.mean_codes_per_response, r.known, r.coded, "codes per response");

    out.check(m.turn_lengths.size() == r.turns.size(), "turn count");
    for (const auto& tl : m.turn_lengths) {
        const auto& [count, agent, user] = r.turns[tl.turn_index];
        out.check(tl.transcripts == count, fmt::format("turn {} transcripts", tl.turn_index));
        same(tl.agent_mean_chars, agent, count, fmt::format("turn {} agent chars", tl.turn_index));
        same(tl.user_mean_chars, user, count, fmt::format("turn {} user chars", tl.turn_index));
    }

    sums_to_one(m.state_share, "state");
    sums_to_one(m.strategy_share, "strategy");
    sums_to_one(m.state_tool_share, "tool-by-state");
    sums_to_one(m.code_share, "code");
    sums_to_one(m.consistency_share, "consistency");
    if (out.pass) {
        out.detail = fmt::format("{} agent messages, {} coded, {} tool calls recounted", r.agent_messages, r.coded,
                                 r.tool_calls);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Live directional check (non-gating)

std::optional<Outcome> live_direction() {
    const char* enabled = std::getenv("COACH_LIVE_ACCEPTANCE");
    if (!enabled || std::string(enabled) != "1") return std::nullopt;
    Outcome out;
    llm::LiveProviderOptions options;
    if (const char* url = std::getenv("COACH_BASE_URL")) options.base_url = url;
    llm::LiveProvider provider(options);
    auto seeds = eval::load_seeds(testing::fixture("seeds"));
    seeds.resize(std::min<std::size_t>(seeds.size(), (kLiveMinCells + eval::kBarrierCount - 1) / eval::kBarrierCount));
    const auto result = eval::counterfactual_run(seeds, eval::barrier_personas(), provider, provider);
    const auto* full = result.aggregate(eval::Agent::Full);
    const auto* baseline = result.aggregate(eval::Agent::Baseline);
    using C = eval::ExternalMICode;
    out.check(full->coded >= kLiveMinCells && baseline->coded >= kLiveMinCells, "fewer than 40 coded cells");
    const double fo = full->containment[eval::index_of(C::OpenQuestion)];
    const double bo = baseline->containment[eval::index_of(C::OpenQuestion)];
    const double fa = full->containment[eval::index_of(C::AdviseWithoutPermission)];
    const double ba = baseline->containment[eval::index_of(C::AdviseWithoutPermission)];
    out.check(fo > bo, "open question not higher for the full pipeline");
    out.check(fa < ba, "unpermitted advice not lower for the full pipeline");
    out.detail = fmt::format("open question {:.3f} vs {:.3f}, advise without permission {:.3f} vs {:.3f} ({} cells)", fo,
                             bo, fa, ba, full->coded) +
                 (out.pass ? "" : "; " + out.detail);
    return out;
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::off);
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"state-machine", state_machine},
        {"aggregation-oracle", aggregation_oracle},
        {"rendering-goldens", rendering_goldens},
        {"prompt-assembly-goldens", prompt_goldens},
        {"mi-taxonomy", mi_taxonomy},
        {"replay-determinism", replay_determinism},
        {"counterfactual-harness", counterfactual},
        {"metrics-oracle", metrics_oracle},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    }

    try {
        if (const auto live = live_direction()) {
            std::cout << (live->pass ? "PASS " : "FAIL ") << "live-direction (non-gating): " << live->detail << std::endl;
        } else {
            std::cout << "SKIP live-direction (non-gating): set COACH_LIVE_ACCEPTANCE=1 and OPENAI_API_KEY to run"
                      << std::endl;
        }
    } catch (const std::exception& e) {
        std::cout << "FAIL live-direction (non-gating): " << e.what() << std::endl;
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
