#include <random>

#include <gtest/gtest.h>

#include "coach/dialogue/classifier.hpp"
#include "coach/llm/scripted_provider.hpp"
#include "coach/prompts/catalog.hpp"

namespace coach::dialogue {
namespace {

using llm::ChatMessage;
using llm::ProviderReply;

std::vector<ChatMessage> history() { return {ChatMessage::assistant("Hi!"), ChatMessage::user("Hello")}; }

AdvanceDecision classify_with(std::string reply, DialogueStateId state = DialogueStateId::Onboarding) {
    llm::ScriptedProvider p;
    p.enqueue("state_classify", ProviderReply::text(std::move(reply)));
    return classify_advance(history(), state, p);
}

TEST(StatePrompt, CatalogTexts) {
    const auto& c = prompts::PromptCatalog::embedded();
    EXPECT_NE(c.state_prompt(DialogueStateId::Onboarding).find("introduce yourself as a health coach"),
              std::string::npos);
    EXPECT_NE(c.state_prompt(DialogueStateId::GoalSetting).find("FITT (Frequency, Intensity, Time, Type)"),
              std::string::npos);
    EXPECT_NE(c.state_prompt(DialogueStateId::GoodBye).find("This is the only session."), std::string::npos);
    EXPECT_NE(c.state_prompt(DialogueStateId::Advice).find("tuning into the negative, self-destructive thoughts"),
              std::string::npos);
}

TEST(States, OrderAndNames) {
    EXPECT_EQ(kStateCount, 8u);
    for (std::size_t i = 0; i < kStateCount; ++i) {
        EXPECT_EQ(index_of(kAllStates[i]), i);
        EXPECT_EQ(parse_state(to_string(kAllStates[i])), kAllStates[i]);
    }
}

TEST(Advance, Successors) {
    EXPECT_EQ(advance(DialogueStateId::Onboarding), DialogueStateId::Program);
    EXPECT_EQ(advance(DialogueStateId::Advice), DialogueStateId::GoodBye);
    EXPECT_EQ(advance(DialogueStateId::GoodBye), DialogueStateId::GoodBye);
}

TEST(Classify, Verdicts) {
    EXPECT_EQ(classify_with("completed"), AdvanceDecision::Completed);
    EXPECT_EQ(classify_with("continue"), AdvanceDecision::Continue);
    EXPECT_EQ(classify_with("Completed."), AdvanceDecision::Completed);
    EXPECT_EQ(classify_with("  'CONTINUE'\n"), AdvanceDecision::Continue);
}

TEST(Classify, GarbageIsContinue) {
    EXPECT_EQ(classify_with("I think the task is done"), AdvanceDecision::Continue);
    EXPECT_EQ(classify_with(""), AdvanceDecision::Continue);
}

TEST(Classify, RequiresTrailingUserMessage) {
    llm::ScriptedProvider p;
    const std::vector<ChatMessage> h{ChatMessage::user("hi"), ChatMessage::assistant("hello")};
    EXPECT_THROW(classify_advance(h, DialogueStateId::Onboarding, p), std::invalid_argument);
}

TEST(Classify, SeesFullHistoryAndStatePrompt) {
    llm::ScriptedProvider p;
    p.enqueue("state_classify", ProviderReply::text("continue"));
    const auto h = history();
    classify_advance(h, DialogueStateId::Barriers, p);
    const auto request = p.requests().at(0);
    ASSERT_EQ(request.messages.size(), h.size() + 2);
    const auto& state = prompts::PromptCatalog::embedded().state_prompt(DialogueStateId::Barriers);
    EXPECT_NE(request.messages.front().content.find(state), std::string::npos);
    EXPECT_NE(request.messages.back().content.find(state), std::string::npos);
    EXPECT_EQ(request.messages.back().role, llm::Role::Assistant);
}

// Monotonicity and fail-safe over fuzzed verdicts.
TEST(ClassifyProperty, MonotoneAndFailSafe) {
    std::mt19937 rng(11);
    const std::vector<std::string> pool{"completed", "continue", "Completed.", "COMPLETED!", "maybe", "",
                                        "completed because", "{\"x\":1}", "continue.", "done"};
    auto state = DialogueStateId::Onboarding;
    for (int i = 0; i < 300; ++i) {
        const auto& reply = pool[rng() % pool.size()];
        const auto decision = classify_with(reply, state);
        const auto next = apply(state, decision);
        EXPECT_GE(index_of(next), index_of(state));
        EXPECT_LE(index_of(next), index_of(state) + 1);
        if (!parse_advance_verdict(reply)) EXPECT_EQ(next, state) << reply;
        state = next;
    }
}

}  // namespace
}  // namespace coach::dialogue
