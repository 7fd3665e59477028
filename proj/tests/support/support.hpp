#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "coach/healthdata/store.hpp"
#include "coach/llm/scripted_provider.hpp"
#include "coach/orchestrator/orchestrator.hpp"
#include "coach/prompts/assemble.hpp"

namespace coach::testing {

std::filesystem::path fixture_dir();
std::filesystem::path fixture(const std::string& name);
std::string read_file(const std::filesystem::path& path);

/// In-memory UTC store loaded with the given fixture files.
std::unique_ptr<healthdata::HealthStore> fixture_store(const std::vector<std::string>& files,
                                                       healthdata::Zone zone = healthdata::Zone::utc());

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// The scripted eight-state demo conversation behind the committed cassette.
namespace demo {

inline constexpr std::string_view kSessionId = "demo-walking";
inline constexpr std::string_view kCassette = "demo_conversation.cassette.json";
inline constexpr std::string_view kTranscript = "demo_conversation.transcript.txt";
inline constexpr std::string_view kSessionJson = "demo_conversation.session.json";

const std::vector<std::string>& user_messages();
/// Queues every reply of the conversation, in order, on `provider`.
void script(llm::ScriptedProvider& provider);
/// Fixed clock and id.
orchestrator::OrchestratorOptions options();
std::unique_ptr<healthdata::HealthStore> store();

/// Runs the whole conversation against `provider`.
orchestrator::Session run(llm::Provider& provider, const healthdata::HealthStore& store);

}  // namespace demo

}  // namespace coach::testing

namespace coach::testing::oracle {

/// A prompt asset read straight from the source tree, trailing newlines removed.
std::string asset(const std::string& name);

/// The five prompt structures rebuilt from the raw asset files: system
/// block sections joined by blank lines, history, optional candidate,
/// trailing agent prompt.
std::vector<llm::ChatMessage> expected_messages(prompts::Stage stage,
                                                const std::vector<llm::ChatMessage>& history,
                                                dialogue::DialogueStateId state,
                                                std::optional<mi::InternalStrategy> strategy,
                                                const llm::ChatMessage* candidate,
                                                const std::string& date_string);

}  // namespace coach::testing::oracle

namespace coach::testing::corpus {

inline constexpr std::string_view kMetricsDir = "metrics";
inline constexpr std::string_view kCodedFile = "coded.json";

/// Three scripted coaching sessions of different lengths, with describe and
/// forced visualize calls spread across states.
std::vector<orchestrator::Session> metrics_sessions();

/// Keyword-driven coder: "?" -> Open Question, "great" -> Affirm, and so on.
/// Sentences containing "[fail]" make the provider throw.
std::unique_ptr<llm::ScriptedProvider> keyword_coder();

}  // namespace coach::testing::corpus
