#include "coach/eval/coding.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "coach/llm/errors.hpp"
#include "coach/llm/gateway.hpp"
#include "coach/util/text.hpp"

namespace coach::eval {

namespace {

constexpr std::array<std::string_view, 14> kAbbreviations{
    "e.g", "i.e", "etc", "vs", "dr", "mr", "mrs", "ms", "prof", "st", "approx", "a.m", "p.m", "jr",
};

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Multi-byte closers: ’ and ”.
std::size_t closer_length(std::string_view text, std::size_t pos) {
    if (pos < text.size() && is_closer(text[pos])) return 1;
    if (text.substr(pos, 3) == "\xE2\x80\x99" || text.substr(pos, 3) == "\xE2\x80\x9D") return 3;
    return 0;
}

/// The word ending just before the '.' at `dot`, lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
    std::size_t begin = dot;
    while (begin > 0 && !is_space(text[begin - 1]) && text[begin - 1] != '(' && text[begin - 1] != '"') --begin;
    return util::to_lower(text.substr(begin, dot - begin));
}

bool is_abbreviation(std::string_view text, std::size_t dot) {
    const auto word = word_before(text, dot);
    if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

void push_trimmed(std::vector<std::string>& out, std::string_view piece) {
    piece = util::trim(piece);
    if (!piece.empty()) out.emplace_back(piece);
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            push_trimmed(out, text.substr(begin, i - begin));
            begin = ++i;
            continue;
        }
        if (!is_terminal(c)) {
            ++i;
            continue;
        }
        const std::size_t punct = i;
        std::size_t j = i + 1;
        while (j < text.size() && is_terminal(text[j])) ++j;
        while (const auto n = closer_length(text, j)) j += n;
        if (j >= text.size()) {
            i = j;
            break;
        }
        if (!is_space(text[j])) {
            i = j;
            continue;
        }
        std::size_t next = j;
        while (next < text.size() && text[next] == ' ') ++next;
        const bool lowercase_next = next < text.size() && std::islower(static_cast<unsigned char>(text[next]));
        const bool single_dot = c == '.' && j == punct + 1;
        if (lowercase_next || (single_dot && is_abbreviation(text, punct))) {
            i = j;
            continue;
        }
        push_trimmed(out, text.substr(begin, j - begin));
        begin = i = j;
    }
    push_trimmed(out, text.substr(begin));
    return out;
}

std::string strategy_lines() {
    std::string out;
    for (const auto& c : external_codes()) {
        if (!out.empty()) out += '\n';
        out += fmt::format("{}: {} Positive examples: {} {} {}", c.display_name, c.definition, c.examples[0],
                           c.examples[1], c.examples[2]);
    }
    return out;
}

std::string strategy_names() {
    std::string out;
    for (const auto& c : external_codes()) {
        if (!out.empty()) out += ", ";
        out += c.display_name;
    }
    return out;
}

std::string coding_prompt(std::string_view sentence, const prompts::PromptCatalog& catalog) {
    auto text = catalog.text(prompts::asset::kMiCoding);
    text = prompts::fill(std::move(text), prompts::slot::kStrategyLines, strategy_lines());
    text = prompts::fill(std::move(text), prompts::slot::kStrategies, strategy_names());
    return prompts::fill(std::move(text), prompts::slot::kUtterance, sentence);
}

CodeSet parse_code_list(std::string_view reply) {
    std::string_view body = reply;
    if (const auto open = reply.find('['); open != std::string_view::npos) {
        const auto close = reply.find(']', open);
        body = reply.substr(open + 1, close == std::string_view::npos ? std::string_view::npos : close - open - 1);
    }
    CodeSet codes;
    std::size_t start = 0;
    while (start <= body.size()) {
        const auto comma = body.find(',', start);
        const auto item = util::normalize_verdict(
            body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) codes.insert(parse_external_code(item).value_or(ExternalMICode::Unknown));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (codes.empty()) codes.insert(ExternalMICode::Unknown);
    return codes;
}

CodedUtterance code_utterance(std::string_view text, llm::Provider& provider, const CoderOptions& options) {
    CodedUtterance out;
    out.text = std::string(text);
    out.sentences = split_sentences(text);
    for (const auto& sentence : out.sentences) {
        llm::CompletionRequest request;
        request.model_id = options.model.model_id;
        request.temperature = options.model.temperature;
        request.stage = std::string(prompts::kMiCodeStage);
        request.messages.push_back(llm::ChatMessage::system(coding_prompt(sentence, options.prompts())));
        try {
            const auto reply = llm::complete(request, provider);
            out.sentence_codes.push_back(parse_code_list(reply.content));
        } catch (const llm::LlmError& e) {
            spdlog::warn("coder failed on \"{}\": {}", sentence, e.what());
            out.coded = false;
            out.error = e.what();
            out.sentence_codes.clear();
            out.merged.clear();
            return out;
        }
        out.merged.insert(out.sentence_codes.back().begin(), out.sentence_codes.back().end());
    }
    if (out.sentences.empty()) {
        out.coded = false;
        out.error = "empty utterance";
    }
    return out;
}

namespace {

nlohmann::json codes_json(const CodeSet& codes) {
    auto out = nlohmann::json::array();
    for (auto c : codes) out.push_back(to_string(c));
    return out;
}

CodeSet codes_from(const nlohmann::json& j) {
    CodeSet out;
    for (const auto& item : j) {
        const auto code = parse_external_code(item.get<std::string>());
        if (!code) throw std::invalid_argument("unknown external code '" + item.get<std::string>() + "'");
        out.insert(*code);
    }
    return out;
}

}  // namespace

void to_json(nlohmann::json& j, const CodedUtterance& coded) {
    auto per_sentence = nlohmann::json::array();
    for (const auto& set : coded.sentence_codes) per_sentence.push_back(codes_json(set));
    j = {{"text", coded.text},
         {"sentences", coded.sentences},
         {"sentence_codes", std::move(per_sentence)},
         {"merged", codes_json(coded.merged)},
         {"coded", coded.coded},
         {"error", coded.error}};
}

void from_json(const nlohmann::json& j, CodedUtterance& coded) {
    coded.text = j.at("text").get<std::string>();
    coded.sentences = j.at("sentences").get<std::vector<std::string>>();
    coded.sentence_codes.clear();
    for (const auto& set : j.at("sentence_codes")) coded.sentence_codes.push_back(codes_from(set));
    coded.merged = codes_from(j.at("merged"));
    coded.coded = j.at("coded").get<bool>();
    coded.error = j.value("error", "");
}

}  // namespace coach::eval
