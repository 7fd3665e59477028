// Command-line entry point: serve, ingest, chat, eval, export-session.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "coach/eval/coding.hpp"
#include "coach/eval/counterfactual.hpp"
#include "coach/eval/metrics.hpp"
#include "coach/eval/report.hpp"
#include "coach/healthdata/store.hpp"
#include "coach/llm/cassette.hpp"
#include "coach/llm/live_provider.hpp"
#include "coach/llm/scripted_provider.hpp"
#include "coach/orchestrator/orchestrator.hpp"
#include "coach/orchestrator/session.hpp"
#include "coach/prompts/assemble.hpp"
#include "coach/service/http_server.hpp"
#include "coach/service/service.hpp"

namespace {

using namespace coach;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProviderFlags {
    std::string kind = "live";
    std::string cassette;
    std::string record;
    std::string base_url = "https://api.openai.com";
    std::string api_key_env = "OPENAI_API_KEY";
};

struct ModelFlags {
    std::string model_id{llm::kDefaultModelId};
    double temperature = llm::kDefaultTemperature;
};

void add_provider_flags(CLI::App* app, ProviderFlags& flags, const std::string& prefix = "") {
    const auto env = prefix.empty() ? std::string("COACH_") : "COACH_" + prefix + "_";
    std::string opt = prefix.empty() ? "--" : "--" + CLI::detail::to_lower(prefix) + "-";
    app->add_option(opt + "provider", flags.kind, "live, replay or scripted")
        ->check(CLI::IsMember({"live", "replay", "scripted"}))
        ->envname(env + "PROVIDER")
        ->capture_default_str();
    app->add_option(opt + "cassette", flags.cassette, "Cassette file for --provider replay")->envname(env + "CASSETTE");
    app->add_option(opt + "record", flags.record, "Record live replies into this cassette file");
    app->add_option(opt + "base-url", flags.base_url, "Chat-completions endpoint base URL")
        ->envname(env + "BASE_URL")
        ->capture_default_str();
    app->add_option(opt + "api-key-env", flags.api_key_env, "Environment variable holding the API key")
        ->capture_default_str();
}

void add_model_flags(CLI::App* app, ModelFlags& flags) {
    app->add_option("--model", flags.model_id, "Model id")->envname("COACH_MODEL")->capture_default_str();
    app->add_option("--temperature", flags.temperature, "Sampling temperature")
        ->envname("COACH_TEMPERATURE")
        ->capture_default_str();
}

/// Canned replies for offline demos and smoke tests.
std::unique_ptr<llm::ScriptedProvider> demo_provider() {
    auto p = std::make_unique<llm::ScriptedProvider>(
        [](const llm::CompletionRequest&) { return llm::ProviderReply::text("Tell me more about that."); });
    p->on("state_classify", [](const auto&) { return llm::ProviderReply::text("continue"); });
    p->on("strategy_predict", [](const auto&) { return llm::ProviderReply::text("Question"); });
    p->on("tool_need_predict", [](const auto&) { return llm::ProviderReply::text("no"); });
    p->on("mi_code", [](const auto&) { return llm::ProviderReply::text("[Open Question]"); });
    return p;
}

/// Owns a provider stack: base provider, optional recorder.
class ProviderStack {
public:
    explicit ProviderStack(const ProviderFlags& flags) {
        if (flags.kind == "replay") {
            if (flags.cassette.empty()) throw UsageError("--provider replay requires --cassette");
            cassette_ = llm::Cassette::load(flags.cassette);
            cassette_path_ = flags.cassette;
            base_ = std::make_unique<llm::ReplayProvider>(cassette_);
        } else if (flags.kind == "scripted") {
            base_ = demo_provider();
        } else {
            llm::LiveProviderOptions options;
            options.base_url = flags.base_url;
            options.api_key_env = flags.api_key_env;
            base_ = std::make_unique<llm::LiveProvider>(options);
        }
        if (!flags.record.empty()) {
            record_path_ = flags.record;
            recording_ = std::make_shared<llm::Cassette>();
            recorder_ = std::make_unique<llm::RecordingProvider>(*base_, recording_);
        }
    }

    ~ProviderStack() {
        if (recording_) {
            try {
                recording_->save(record_path_);
                spdlog::info("recorded {} interactions to {}", recording_->size(), record_path_);
            } catch (const std::exception& e) {
                spdlog::error("saving cassette failed: {}", e.what());
            }
        }
    }

    llm::Provider& get() { return recorder_ ? static_cast<llm::Provider&>(*recorder_) : *base_; }

    void describe(eval::RunInfo& info) const {
        info.provider = recorder_ ? recorder_->label() : base_->label();
        if (cassette_) info.cassettes[cassette_path_] = cassette_->content_hash();
    }

private:
    std::unique_ptr<llm::Provider> base_;
    std::shared_ptr<llm::Cassette> cassette_;
    std::string cassette_path_;
    std::shared_ptr<llm::Cassette> recording_;
    std::string record_path_;
    std::unique_ptr<llm::RecordingProvider> recorder_;
};

std::shared_ptr<healthdata::HealthStore> open_store(const std::string& data_dir, const std::string& timezone) {
    if (data_dir.empty()) throw UsageError("--data-dir is required");
    healthdata::StoreOptions options;
    options.directory = std::filesystem::path(data_dir) / "health";
    options.zone = healthdata::Zone::load(timezone);
    std::filesystem::create_directories(*options.directory);
    return std::make_shared<healthdata::HealthStore>(options);
}

std::filesystem::path session_dir(const std::string& data_dir) { return std::filesystem::path(data_dir) / "sessions"; }

orchestrator::OrchestratorOptions orchestrator_options(const ModelFlags& model, std::size_t max_tool_calls) {
    orchestrator::OrchestratorOptions options;
    options.model = {model.model_id, model.temperature};
    options.max_tool_calls = max_tool_calls;
    return options;
}

std::set<std::string> split_csv(const std::string& text) {
    std::set<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.insert(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void print_turn(const orchestrator::TurnOutput& output, const orchestrator::Session& session) {
    for (const auto& item : output.items) {
        if (const auto* change = std::get_if<orchestrator::StateChange>(&item)) {
            std::cout << fmt::format("[state: {} -> {}]\n", dialogue::to_string(change->from),
                                     dialogue::to_string(change->to));
        } else if (const auto* m = std::get_if<orchestrator::MessageItem>(&item)) {
            std::cout << "coach> " << m->message.content << "\n";
        } else if (const auto* v = std::get_if<orchestrator::VisualizationItem>(&item)) {
            const auto* event = session.find_event(v->event_id);
            std::cout << fmt::format("[chart {}: {} by {}, {} bars]\n", v->event_id, event ? event->source : "?",
                                     event ? healthdata::to_string(event->granularity) : "?",
                                     event ? (event->buckets.empty() ? event->workouts.size() : event->buckets.size())
                                           : 0);
        }
    }
    std::cout.flush();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Health-coaching conversation engine"};
    app.set_config("--config", "", "Configuration file (TOML/INI keys match long flag names)");
    app.require_subcommand(1);

    std::string data_dir;
    std::string timezone = "UTC";
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error")->envname("COACH_LOG_LEVEL")
        ->capture_default_str();

    auto add_store_flags = [&](CLI::App* sub) {
        sub->add_option("--data-dir", data_dir, "Data directory (health records and sessions)")
            ->envname("COACH_DATA_DIR");
        sub->add_option("--timezone", timezone, "Zone for calendar buckets (UTC, IANA name, +HH:MM)")
            ->envname("COACH_TIMEZONE")
            ->capture_default_str();
    };

    ProviderFlags provider_flags;
    ModelFlags model_flags;
    std::size_t max_tool_calls = orchestrator::kDefaultMaxToolCalls;

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    add_store_flags(serve);
    add_provider_flags(serve, provider_flags);
    add_model_flags(serve, model_flags);
    service::HttpOptions http;
    std::string token, ui_dir;
    serve->add_option("--host", http.host, "Bind address")->envname("COACH_HOST")->capture_default_str();
    serve->add_option("--port", http.port, "Port")->envname("COACH_PORT")->capture_default_str();
    serve->add_option("--token", token, "Bearer token required on API routes")->envname("COACH_TOKEN");
    serve->add_option("--ui-dir", ui_dir, "Static chat client to serve at /")->envname("COACH_UI_DIR");
    serve->add_option("--max-tool-calls", max_tool_calls, "Tool executions per turn")->capture_default_str();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Import NDJSON or FHIR health records");
    add_store_flags(ingest);
    std::string ingest_file;
    ingest->add_option("file", ingest_file, "Records file ('-' for stdin)")->required();

    // chat
    auto* chat = app.add_subcommand("chat", "Terminal conversation with a local coach");
    add_store_flags(chat);
    add_provider_flags(chat, provider_flags);
    add_model_flags(chat, model_flags);
    std::string resume, shared;
    chat->add_option("--session", resume, "Resume an existing session id");
    chat->add_option("--shared-sources", shared, "Comma-separated sources the coach may read (default: all)");
    chat->add_option("--max-tool-calls", max_tool_calls, "Tool executions per turn")->capture_default_str();

    // export-session
    auto* export_cmd = app.add_subcommand("export-session", "Print a session transcript");
    add_store_flags(export_cmd);
    std::string export_id;
    bool export_json = false;
    export_cmd->add_option("id", export_id, "Session id")->required();
    export_cmd->add_flag("--json", export_json, "Print the session JSON instead of text");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluation: MI coding, metrics, counterfactual runs");
    eval_cmd->require_subcommand(1);
    std::string out_dir = "results";
    ProviderFlags coder_flags;

    auto* eval_code = eval_cmd->add_subcommand("code", "Code the coach messages of session files");
    std::vector<std::string> transcripts;
    eval_code->add_option("transcripts", transcripts, "Session JSON files")->required()->check(CLI::ExistingFile);
    add_provider_flags(eval_code, coder_flags);
    eval_code->add_option("--out", out_dir, "Results directory")->capture_default_str();

    auto* eval_metrics = eval_cmd->add_subcommand("metrics", "Transcript analytics over a directory of sessions");
    std::string metrics_dir, coded_file;
    eval_metrics->add_option("dir", metrics_dir, "Directory of session JSON files")->required()
        ->check(CLI::ExistingDirectory);
    eval_metrics->add_option("--coded", coded_file, "coded.json from 'eval code'")->check(CLI::ExistingFile);
    eval_metrics->add_option("--out", out_dir, "Results directory")->capture_default_str();

    auto* eval_cf = eval_cmd->add_subcommand("counterfactual", "Full pipeline vs system-prompt-only baseline");
    std::string histories_dir, agents_text = "full,baseline";
    std::size_t repeats = 1, parallelism = 4;
    eval_cf->add_option("--histories", histories_dir, "Directory of seed histories")->required()
        ->check(CLI::ExistingDirectory);
    eval_cf->add_option("--agents", agents_text, "Comma-separated: full, baseline")->capture_default_str();
    eval_cf->add_option("--repeats", repeats, "Samples per cell")->capture_default_str();
    eval_cf->add_option("--parallelism", parallelism, "Concurrent cells")->capture_default_str();
    eval_cf->add_option("--out", out_dir, "Results directory")->capture_default_str();
    add_provider_flags(eval_cf, provider_flags);
    add_provider_flags(eval_cf, coder_flags, "CODER");
    add_model_flags(eval_cf, model_flags);

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(spdlog::level::from_str(log_level));
    spdlog::set_default_logger(spdlog::stderr_color_mt("coach"));

    try {
        if (*serve) {
            auto store = open_store(data_dir, timezone);
            ProviderStack provider(provider_flags);
            service::CoachService svc(store, provider.get(), session_dir(data_dir),
                                      orchestrator_options(model_flags, max_tool_calls));
            if (!token.empty()) http.bearer_token = token;
            if (!ui_dir.empty()) http.ui_dir = ui_dir;
            service::HttpServer server(svc, http);
            spdlog::info("listening on {}:{}", http.host, http.port);
            if (!server.listen()) throw std::runtime_error(fmt::format("cannot bind {}:{}", http.host, http.port));
            return 0;
        }

        if (*ingest) {
            auto store = open_store(data_dir, timezone);
            std::ifstream file;
            std::istream* input = &std::cin;
            if (ingest_file != "-") {
                file.open(ingest_file);
                if (!file) throw std::runtime_error("cannot read " + ingest_file);
                input = &file;
            }
            const auto report = store->ingest(*input);
            std::cout << fmt::format("accepted: {}\nrejected: {}\nduplicates: {}\n", report.accepted, report.rejected,
                                     report.duplicates);
            for (const auto& r : report.rejections) std::cout << fmt::format("  line {}: {}\n", r.line, r.reason);
            return 0;
        }

        if (*chat) {
            auto store = open_store(data_dir, timezone);
            ProviderStack provider(provider_flags);
            const orchestrator::SessionStore sessions(session_dir(data_dir));
            const orchestrator::Orchestrator coach(*store, provider.get(), &sessions,
                                                   orchestrator_options(model_flags, max_tool_calls));
            std::optional<std::set<std::string>> shared_sources;
            if (!shared.empty()) shared_sources = split_csv(shared);
            auto session = resume.empty() ? coach.create_session(shared_sources) : sessions.load(resume);
            std::cout << fmt::format("session {} ({}). Type /quit to leave.\n", session.id,
                                     dialogue::to_string(session.state));
            std::string line;
            while (std::cout << "you> " << std::flush, std::getline(std::cin, line)) {
                if (line == "/quit") break;
                if (line == "/state") {
                    std::cout << dialogue::to_string(session.state) << "\n";
                    continue;
                }
                if (line.empty()) continue;
                try {
                    print_turn(coach.handle_user_message(session, line), session);
                } catch (const std::exception& e) {
                    std::cout << "error: " << e.what() << " (turn discarded)\n";
                }
            }
            return 0;
        }

        if (*export_cmd) {
            if (data_dir.empty()) throw UsageError("--data-dir is required");
            const orchestrator::SessionStore sessions(session_dir(data_dir));
            const auto session = sessions.load(export_id);
            if (export_json) {
                std::cout << nlohmann::json(session).dump(2) << "\n";
            } else {
                std::cout << orchestrator::export_transcript(session);
            }
            return 0;
        }

        if (*eval_code) {
            ProviderStack coder(coder_flags);
            eval::CodedCorpus corpus;
            for (const auto& path : transcripts) {
                const auto session = eval::load_session_file(path);
                corpus[session.id] = eval::code_transcript(session, coder.get());
            }
            std::filesystem::create_directories(out_dir);
            std::ofstream(std::filesystem::path(out_dir) / "coded.json")
                << eval::coded_corpus_to_json(corpus).dump(2) << "\n";
            eval::RunInfo info;
            coder.describe(info);
            const eval::CoderOptions defaults;
            info.model_id = defaults.model.model_id;
            info.temperature = defaults.model.temperature;
            eval::write_manifest(out_dir, info, {"coded.json"});
            std::cout << fmt::format("coded {} transcripts into {}\n", corpus.size(), out_dir);
            return 0;
        }

        if (*eval_metrics) {
            eval::CodedCorpus corpus;
            if (!coded_file.empty()) {
                std::ifstream in(coded_file);
                corpus = eval::coded_corpus_from_json(nlohmann::json::parse(in));
            }
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(metrics_dir)) {
                if (entry.path().extension() == ".json") files.push_back(entry.path());
            }
            std::sort(files.begin(), files.end());
            std::vector<eval::Transcript> corpus_transcripts;
            for (const auto& f : files) {
                eval::Transcript t{eval::load_session_file(f), {}};
                if (const auto it = corpus.find(t.session.id); it != corpus.end()) t.coded = it->second;
                corpus_transcripts.push_back(std::move(t));
            }
            const auto metrics = eval::transcript_metrics(corpus_transcripts);
            const auto written = eval::render_report(metrics, out_dir);
            eval::write_manifest(out_dir, eval::RunInfo{"none", "", 0.0, {}}, written);
            std::cout << fmt::format("{} transcripts, {} agent messages; report in {}\n", metrics.transcripts,
                                     metrics.agent_messages, out_dir);
            return 0;
        }

        if (*eval_cf) {
            ProviderStack agent(provider_flags);
            ProviderStack coder(coder_flags);
            eval::CounterfactualOptions options;
            options.agents.clear();
            for (const auto& name : split_csv(agents_text)) {
                const auto a = eval::parse_agent(name);
                if (!a) throw UsageError("unknown agent '" + name + "'");
                options.agents.push_back(*a);
            }
            std::sort(options.agents.begin(), options.agents.end());
            options.repeats = repeats;
            options.parallelism = parallelism;
            options.model = {model_flags.model_id, model_flags.temperature};
            const auto seeds = eval::load_seeds(histories_dir);
            const auto result =
                eval::counterfactual_run(seeds, eval::barrier_personas(), agent.get(), coder.get(), options);
            const auto written = eval::render_counterfactual_report(result, out_dir);
            eval::RunInfo info;
            agent.describe(info);
            coder.describe(info);
            info.model_id = model_flags.model_id;
            info.temperature = model_flags.temperature;
            eval::write_manifest(out_dir, info, written);
            for (const auto& a : result.aggregates) {
                std::cout << fmt::format("{}: {} cells, {} failed, {} uncoded\n", eval::to_string(a.agent), a.cells,
                                         a.failed, a.uncoded);
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
