#include "support.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "coach/llm/errors.hpp"

namespace coach::testing {

std::filesystem::path fixture_dir() { return COACH_FIXTURE_DIR; }

std::filesystem::path fixture(const std::string& name) { return fixture_dir() / name; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::unique_ptr<healthdata::HealthStore> fixture_store(const std::vector<std::string>& files, healthdata::Zone zone) {
    healthdata::StoreOptions options;
    options.zone = std::move(zone);
    auto store = std::make_unique<healthdata::HealthStore>(options);
    for (const auto& name : files) {
        std::ifstream in(fixture(name));
        if (!in) throw std::runtime_error("missing fixture " + name);
        const auto report = store->ingest(in);
        if (report.rejected != 0) throw std::runtime_error("fixture " + name + " has rejected records");
    }
    return store;
}

TempDir::TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / fmt::format("coach-test-{:08x}{:08x}", rd(), rd());
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

namespace demo {

using llm::ProviderReply;

const std::vector<std::string>& user_messages() {
    static const std::vector<std::string> messages{
        "Hi, I'm Sam. I'd like to get more active.",
        "Mostly walking. I used to walk to work but now I drive.",
        "A couple of years ago I did a couch to 5k program and enjoyed it.",
        "Work gets busy and by the evening I'm too tired.",
        "I want to keep up with my kids on weekend hikes.",
        "Maybe walk 8000 steps on weekdays?",
        "Sure, any tips would help.",
        "Thanks, that's all for today.",
    };
    return messages;
}

void script(llm::ScriptedProvider& p) {
    // Turn 0: Onboarding.
    p.enqueue("state_classify", ProviderReply::text("continue"));
    p.enqueue("strategy_predict", ProviderReply::text("Question"));
    p.enqueue("response_generate",
              ProviderReply::text("Nice to meet you, Sam! What kinds of activity do you enjoy most?"));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));

    // Turn 1: Program.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Giving Information"));
    p.enqueue("response_generate",
              ProviderReply::text("Here is how this works: we'll look at your past activity, what gets in the way, "
                                  "and then set a goal together.\nDoes that sound okay?"));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));

    // Turn 2: PastExperience, with a describe call.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Affirm"));
    p.enqueue("response_generate",
              ProviderReply::call("call_1", "describe",
                                  R"({"data_source_name": "health.stepcount", "start": "2024-02-23 00:00:00", )"
                                  R"("end": "2024-02-23 23:59:59", "granularity": "day"})"));
    p.enqueue("response_generate",
              ProviderReply::text("Finishing that program is a real achievement. Your watch shows 10968 steps on "
                                  "February 23, so that base is still there."));

    // Turn 3: Barriers, with a forced visualization.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Reflect"));
    p.enqueue("response_generate",
              ProviderReply::text("It sounds like your energy runs out by the end of a long workday."));
    p.enqueue("tool_need_predict", ProviderReply::text("yes"));
    p.enqueue("tool_call_generate",
              ProviderReply::call("call_2", "visualize",
                                  R"({"data_source_name": "health.workout", "date": "2024-03-01", )"
                                  R"("granularity": "month"})"));
    p.enqueue("response_generate",
              ProviderReply::text("This chart shows your March workouts: mostly short cycling sessions, plus a few "
                                  "longer runs."));

    // Turn 4: Motivation.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Affirm"));
    p.enqueue("response_generate",
              ProviderReply::text("Keeping up with your kids on the trail is a great reason to move."));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));

    // Turn 5: GoalSetting.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Question"));
    p.enqueue("response_generate",
              ProviderReply::text("8000 steps on weekdays is specific. How confident do you feel, from 1 to 10?"));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));

    // Turn 6: Advice.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Advise with Permission"));
    p.enqueue("response_generate",
              ProviderReply::text("One idea: park a little further from work and take a 10 minute walk at lunch."));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));

    // Turn 7: GoodBye.
    p.enqueue("state_classify", ProviderReply::text("completed"));
    p.enqueue("strategy_predict", ProviderReply::text("Support"));
    p.enqueue("response_generate", ProviderReply::text("Good luck this week, Sam. I'm here whenever you want to check in."));
    p.enqueue("tool_need_predict", ProviderReply::text("no"));
}

orchestrator::OrchestratorOptions options() {
    orchestrator::OrchestratorOptions options;
    options.clock = [] {
        return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::sys_days{
                   std::chrono::year{2024} / std::chrono::March / 4}) +
               std::chrono::hours{9};
    };
    options.id_generator = [] { return std::string(kSessionId); };
    return options;
}

std::unique_ptr<healthdata::HealthStore> store() { return fixture_store({"steps_day.ndjson", "workouts_march.ndjson"}); }

orchestrator::Session run(llm::Provider& provider, const healthdata::HealthStore& store) {
    const orchestrator::Orchestrator coach(store, provider, nullptr, options());
    auto session = coach.create_session();
    for (const auto& text : user_messages()) coach.handle_user_message(session, text);
    return session;
}

}  // namespace demo

}  // namespace coach::testing

namespace coach::testing::oracle {

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
    }
    return text;
}

const char* const kStateFiles[] = {"states/1_onboarding.txt", "states/2_program.txt",      "states/3_past_experience.txt",
                                   "states/4_barriers.txt",   "states/5_motivation.txt",   "states/6_goal_setting.txt",
                                   "states/7_advice.txt",     "states/8_goodbye.txt"};

const char* const kStrategyNames[] = {"Advise with Permission", "Affirm",   "Facilitate",    "Filler",
                                      "Giving Information",     "Question", "Raise Concern", "Reflect",
                                      "Reframe",                "Support",  "Structure"};

std::string description_line(mi::InternalStrategy s) {
    const std::string prefix = std::string(kStrategyNames[static_cast<int>(s)]) + ":";
    std::istringstream in(asset("strategy_descriptions.txt"));
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) return line;
    }
    throw std::runtime_error("no description for " + prefix);
}

}  // namespace

std::string asset(const std::string& name) {
    auto text = read_file(std::filesystem::path(COACH_PROMPT_DIR) / name);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

std::vector<llm::ChatMessage> expected_messages(prompts::Stage stage,
                                                const std::vector<llm::ChatMessage>& history,
                                                dialogue::DialogueStateId state,
                                                std::optional<mi::InternalStrategy> strategy,
                                                const llm::ChatMessage* candidate,
                                                const std::string& date_string) {
    using prompts::Stage;
    const auto state_text = asset(kStateFiles[static_cast<int>(state)]);
    const auto system = replace_all(asset("system.txt"), "{DATE_STRING}", date_string);
    auto join = [](std::initializer_list<std::string> parts) {
        std::string out;
        for (const auto& p : parts) out += (out.empty() ? "" : "\n\n") + p;
        return out;
    };

    std::string block, agent;
    switch (stage) {
        case Stage::StateClassify:
            block = asset("state_classify_system.txt");
            agent = asset("state_classify_agent.txt");
            break;
        case Stage::StrategyPredict: {
            block = join({system, state_text, asset("strategy_predict_instructions.txt"),
                          asset("strategy_descriptions.txt")});
            std::string names;
            for (const auto* n : kStrategyNames) names += (names.empty() ? "" : ", ") + std::string(n);
            agent = replace_all(asset("strategy_predict_agent.txt"), "{STRATEGIES}", names);
            break;
        }
        case Stage::ResponseGenerate:
            block = join({system, state_text, asset("response_generate_instructions.txt"),
                          asset("strategy_descriptions.txt"), asset("tool_examples.txt")});
            agent = asset("response_generate_agent.txt");
            break;
        case Stage::ToolNeedPredict:
            block = join({system, state_text, asset("tool_need_instructions.txt"), asset("tool_examples.txt")});
            agent = asset("tool_need_agent.txt");
            break;
        case Stage::ToolCallGenerate:
            block = join({system, state_text, asset("tool_call_instructions.txt"), asset("tool_examples.txt")});
            agent = asset("tool_call_agent.txt");
            break;
    }
    if (strategy) agent = replace_all(agent, "{STRATEGY_DESCRIPTION}", description_line(*strategy));
    block = replace_all(block, "{DIALOGUE STATE PROMPT}", state_text);
    agent = replace_all(agent, "{DIALOGUE STATE PROMPT}", state_text);

    std::vector<llm::ChatMessage> out{llm::ChatMessage::system(block)};
    out.insert(out.end(), history.begin(), history.end());
    if (candidate) out.push_back(*candidate);
    out.push_back(llm::ChatMessage::assistant(agent));
    return out;
}

}  // namespace coach::testing::oracle

namespace coach::testing::corpus {

using llm::ProviderReply;

namespace {

const char* const kReplies[] = {
    "That's great progress. What helped you most?",
    "Walking after dinner is a good habit.",
    "You should try running every day.",
    "It sounds like mornings are hard for you. Would it be alright if I suggested something?",
    "Thanks for sharing that.",
    "How many days a week feel realistic?",
    "Let's set a goal together. What matters most to you?",
    "You might consider a short walk at lunch. [fail]",
    "Great job keeping up with cycling!",
    "Okay.",
};

const char* const kStrategyReplies[] = {"Question", "Affirm", "Reflect", "Giving Information", "Support",
                                        "Advise with Permission", "Structure", "Filler", "Reframe"};

const char* const kDescribeArgs =
    R"({"data_source_name": "health.stepcount", "start": "2024-02-23", "end": "2024-02-23", "granularity": "day"})";
const char* const kVisualizeArgs =
    R"({"data_source_name": "health.workout", "date": "2024-03-01", "granularity": "month"})";

orchestrator::Session build(std::uint32_t seed, const std::string& id, int turns, const healthdata::HealthStore& store) {
    std::mt19937 rng(seed);
    llm::ScriptedProvider p;
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    p.on("state_classify", [&](const auto&) { return ProviderReply::text(pick(3) == 0 ? "continue" : "completed"); });
    p.on("strategy_predict", [&](const auto&) { return ProviderReply::text(kStrategyReplies[pick(std::size(kStrategyReplies))]); });
    p.on("response_generate", [&](const llm::CompletionRequest& r) {
        const bool after_tool = r.messages.size() >= 2 && r.messages[r.messages.size() - 2].role == llm::Role::Tool;
        if (!r.tools.empty() && !after_tool && pick(5) == 0) return ProviderReply::call("d1", "describe", kDescribeArgs);
        return ProviderReply::text(kReplies[pick(std::size(kReplies))]);
    });
    p.on("tool_need_predict", [&](const auto&) { return ProviderReply::text(pick(4) == 0 ? "yes" : "no"); });
    p.on("tool_call_generate", [&](const auto&) { return ProviderReply::call("v1", "visualize", kVisualizeArgs); });

    auto options = demo::options();
    options.id_generator = [id] { return id; };
    const orchestrator::Orchestrator coach(store, p, nullptr, options);
    auto session = coach.create_session();
    const char* const user[] = {"Hi there.", "I walk sometimes.", "Work is busy and I'm tired a lot.",
                                "I want more energy for my kids.", "Maybe three walks a week?", "Okay, thanks!"};
    for (int t = 0; t < turns; ++t) coach.handle_user_message(session, user[pick(std::size(user))]);
    return session;
}

}  // namespace

std::vector<orchestrator::Session> metrics_sessions() {
    const auto store = demo::store();
    return {build(101, "corpus-a", 9, *store), build(202, "corpus-b", 5, *store), build(303, "corpus-c", 12, *store)};
}

std::unique_ptr<llm::ScriptedProvider> keyword_coder() {
    auto p = std::make_unique<llm::ScriptedProvider>([](const llm::CompletionRequest& r) -> ProviderReply {
        const auto& prompt = r.messages.at(0).content;
        const std::string open = "coach utterance: ";
        const auto from = prompt.find(open);
        const auto to = prompt.find("?\nStrategy:", from);
        if (from == std::string::npos || to == std::string::npos) return ProviderReply::text("unknown");
        const auto sentence = prompt.substr(from + open.size(), to - from - open.size());
        if (sentence.find("[fail]") != std::string::npos) throw llm::TransportError("coder unavailable");
        std::vector<std::string> codes;
        if (sentence.find('?') != std::string::npos) {
            codes.push_back(sentence.find("How many") != std::string::npos ? "Closed Question" : "Open Question");
        }
        if (sentence.find("reat") != std::string::npos || sentence.find("good habit") != std::string::npos) codes.push_back("Affirm");
        if (sentence.find("should") != std::string::npos) codes.push_back("Advise Without Permission");
        if (sentence.find("sounds like") != std::string::npos) codes.push_back("Simple Reflection");
        if (sentence.find("alright if I") != std::string::npos) codes.push_back("Advise With Permission");
        if (sentence.find("Let's") != std::string::npos) codes.push_back("Structure");
        if (sentence.find("Thanks") != std::string::npos) codes.push_back("Support");
        if (codes.empty()) return ProviderReply::text("unknown");
        std::string out = "[";
        for (std::size_t i = 0; i < codes.size(); ++i) out += (i ? ", " : "") + codes[i];
        return ProviderReply::text(out + "]");
    });
    return p;
}

}  // namespace coach::testing::corpus
