#include "coach/eval/external.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace coach::eval {

namespace {

using C = ExternalMICode;
constexpr auto kC = Consistency::Consistent;
constexpr auto kI = Consistency::Inconsistent;
constexpr auto kN = Consistency::Neutral;

constexpr std::array<ExternalCodeInfo, kExternalCodeCount> kCodes{{
    {C::AdviseWithPermission, "AdviseWithPermission", "Advise With Permission", kC,
     "The counselor gives advice, makes a suggestion, or offers a solution or possible action with client "
     "permission. These will usually contain language that indicates that advice is being given: should, why don't "
     "you, consider, try, suggest, advise, you could, etc. Prior permission can be in the form of a request from the "
     "client, or in the counselor asking the client's permission to offer it. Indirect forms of permission asking "
     "may also occur, such as a counselor statement that gives the client permission to disregard the advice (\"This "
     "may or may not make sense to you\").",
     {"Would it be okay if I shared a few ideas for fitting walks into your workday?",
      "Since you asked, one option you could consider is a ten-minute stretch after you wake up.",
      "This may or may not suit you, but some people find it easier to exercise with a friend."}},
    {C::AdviseWithoutPermission, "AdviseWithoutPermission", "Advise Without Permission", kI,
     "The counselor gives advice, makes a suggestion, or offers a solution or possible action without client "
     "permission.",
     {"You should start going to the gym three times a week.",
      "Try taking the stairs instead of the elevator at work.",
      "I suggest you sign up for a yoga class this weekend."}},
    {C::Affirm, "Affirm", "Affirm", kC,
     "The counselor says something positive or complimentary to the client. It may be in the form of expressed "
     "appreciation, confidence or reinforcement.",
     {"You kept up your morning walks even during a busy week, which shows real commitment.",
      "It took courage to get back on the bike after your injury.",
      "You clearly know a lot about what works for your body."}},
    {C::Confront, "Confront", "Confront", kI,
     "The counselor directly disagrees, argues, corrects, shames, blames, seeks to persuade, criticizes, judges, "
     "labels, moralizes, ridicules, or questions the client's honesty. These are the expert-like responses that have "
     "a particular negative-parent quality, an uneven power relationship accompanied by disapproval, disagreement, "
     "or negativity. There is a sense of “expert over-ride” of what the client says.",
     {"Come on, you can't really be too busy to walk for ten minutes.",
      "That's just an excuse for not exercising.",
      "Do you honestly think skipping every workout is going to get you anywhere?"}},
    {C::Direct, "Direct", "Direct", kI,
     "The counselor gives an order, command, or direction. The language is imperative.",
     {"Write down your step count every evening.", "Go for a run tomorrow morning.",
      "Stop skipping your workouts."}},
    {C::EmphasizeControl, "EmphasizeControl", "Emphasize Control", kC,
     "The counselor directly acknowledges, honors, or emphasizes the client's freedom of choice, autonomy, personal "
     "responsibility, etc. There is no tone of blaming or faultfinding.",
     {"It's completely up to you how active you want to be.",
      "You're the one who knows best which activities fit your life.",
      "Whether you change anything at all is your decision."}},
    {C::Facilitate, "Facilitate", "Facilitate", kN,
     "These are simple utterances that function as keep going acknowledgments.",
     {"Mm hmm.", "Tell me more.", "I see, go on."}},
    {C::Filler, "Filler", "Filler", kN,
     "This is a code for the few responses that are not codeable elsewhere: pleasantries, etc. It should not be used "
     "often.",
     {"Good morning!", "Nice to meet you.", "Have a great rest of your day."}},
    {C::GivingInformation, "GivingInformation", "Giving Information", kN,
     "The counselor gives information to the client, explains something, educates or provides feedback or discloses "
     "personal information.",
     {"Adults are generally recommended to get about 150 minutes of moderate activity each week.",
      "You averaged about 6,000 steps a day last month.",
      "Brisk walking counts as moderate-intensity exercise."}},
    {C::OpenQuestion, "OpenQuestion", "Open Question", kC,
     "The counselor asks a question in order to gather information, understand, or elicit the client's story. "
     "Generally these begin with a question marker word: Who, What, Why, When, How, Where, etc. An open question is "
     "coded when the counselor asks a question that allows a wide range of possible answers.",
     {"What kinds of physical activity have you enjoyed in the past?",
      "How do you feel about your current activity level?",
      "What gets in the way of exercising during the week?"}},
    {C::ClosedQuestion, "ClosedQuestion", "Closed Question", kN,
     "The counselor asks a question in order to gather information, understand, or elicit the client's story. "
     "Generally these begin with a question marker word: Who, What, Why, When, How, Where, etc. A closed question "
     "implies a short answer: Yes or no, a specific fact, a number, etc.",
     {"How many days a week do you exercise right now?", "Do you own a bike?",
      "Have you had any injuries in the past year?"}},
    {C::RaiseConcernWithPermission, "RaiseConcernWithPermission", "Raise Concern with Permission", kN,
     "The counselor points out a possible problem with a client's goal, plan, or intention with permission. Prior "
     "permission can be in the form of a request from the client or in the counselor asking the client's permission "
     "to offer it. Indirect forms of permission asking may also occur, such as a counselor’s statement that gives "
     "the client permission to disregard the counselor’s concern.",
     {"Could I share a concern about running every day right after your knee injury?",
      "You asked what I think, and I do wonder whether two-hour sessions might lead to burnout.",
      "This may not apply to you, but I'm a little worried that late-night workouts could affect your sleep."}},
    {C::RaiseConcernWithoutPermission, "RaiseConcernWithoutPermission", "Raise Concern without Permission", kI,
     "The counselor points out a possible problem with a client's goal, plan, or intention without permission.",
     {"I'm worried that jumping straight into marathon training will get you hurt.",
      "That plan to cut your workouts to once a week concerns me.",
      "Exercising only on weekends might not be enough to reach your goal."}},
    {C::SimpleReflection, "SimpleReflection", "Simple Reflection", kC,
     "A reflection is a reflective listening statement made by the counselor in response to a client statement. "
     "Reflections capture and return to the client something that the client has said. Simple Reflections add "
     "little or no meaning or emphasis to what the client has said.",
     {"You've been walking to work most days.", "You find it hard to exercise after a long shift.",
      "Swimming is something you enjoy."}},
    {C::ComplexReflection, "ComplexReflection", "Complex Reflection", kC,
     "A reflection is a reflective listening statement made by the counselor in response to a client statement. "
     "Reflections capture and return to the client something that the client has said. Complex Reflections "
     "typically add substantial meaning or emphasis to what the client has said.",
     {"Being active matters to you, and yet your schedule keeps pushing it aside.",
      "It sounds like feeling judged at the gym has made exercise feel unsafe for you.",
      "You want to be a role model for your kids, and that's part of what is driving you."}},
    {C::Reframe, "Reframe", "Reframe", kC,
     "The counselor suggests a different meaning for an experience expressed by the client, placing it in a new "
     "light. These generally have the quality of changing the emotional valence of meaning from negative to positive "
     "or from positive to negative. Reframes generally meet the criteria for Reflect but go further than adding "
     "meaning or emphasis by actually changing the valence of meaning and not just the depth.",
     {"Missing a week of workouts gave you a clear picture of what throws your routine off.",
      "Feeling sore after your first class is a sign your body is adapting.",
      "Your partner's reminders to exercise sound like they come from caring about you."}},
    {C::Structure, "Structure", "Structure", kN,
     "To give information about what’s going to happen directly to the client throughout the course of treatment or "
     "within a study format, in this or subsequent sessions. To make a transition from one part of a session to "
     "another.",
     {"Today we'll talk about your past experiences with activity and then set a goal together.",
      "Next, I'd like to move on to what motivates you.",
      "We'll finish by going over a plan for the coming week."}},
    {C::Support, "Support", "Support", kC,
     "These are generally sympathetic, compassionate, or understanding comments. They have the quality of agreeing "
     "or siding with the client.",
     {"That sounds really difficult.", "It makes sense that you'd feel tired after caring for your family all day.",
      "Anyone would find it hard to stay active through an illness."}},
    {C::Warn, "Warn", "Warn", kI,
     "The counselor provides a warning or threat, implying negative consequences unless the client takes a certain "
     "action. It may be a threat that the counselor has the perceived power to carry out or simply the prediction of "
     "a bad outcome if the client takes a certain course.",
     {"If you don't start moving more, your blood pressure is going to keep rising.",
      "Keep skipping warm-ups and you'll end up injured.",
      "Without regular exercise you'll lose the progress you've made."}},
}};

std::string squash(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '-' || c == '_') continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace

std::span<const ExternalCodeInfo, kExternalCodeCount> external_codes() noexcept { return kCodes; }

const ExternalCodeInfo& info(ExternalMICode code) {
    if (code == C::Unknown) throw std::invalid_argument("Unknown has no catalog entry");
    return kCodes[index_of(code)];
}

std::string_view to_string(ExternalMICode code) noexcept {
    return code == C::Unknown ? "Unknown" : kCodes[index_of(code)].identifier;
}

std::string_view display_name(ExternalMICode code) noexcept {
    return code == C::Unknown ? "Unknown" : kCodes[index_of(code)].display_name;
}

Consistency classify_consistency(ExternalMICode code) noexcept {
    return code == C::Unknown ? Consistency::None : kCodes[index_of(code)].consistency;
}

std::string_view to_string(Consistency c) noexcept {
    switch (c) {
        case Consistency::Consistent: return "consistent";
        case Consistency::Inconsistent: return "inconsistent";
        case Consistency::Neutral: return "neutral";
        case Consistency::None: return "none";
    }
    return "none";
}

std::optional<ExternalMICode> parse_external_code(std::string_view text) noexcept {
    const auto key = squash(text);
    if (key.empty()) return std::nullopt;
    if (key == "unknown") return C::Unknown;
    if (key == "closedquesiton") return C::ClosedQuestion;
    for (const auto& c : kCodes) {
        if (squash(c.identifier) == key) return c.code;
    }
    return std::nullopt;
}

}  // namespace coach::eval
