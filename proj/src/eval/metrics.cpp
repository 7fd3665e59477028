#include "coach/eval/metrics.hpp"

#include <fstream>
#include <stdexcept>

#include "coach/util/sha256.hpp"

namespace coach::eval {

namespace {

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / den; }

}  // namespace

std::size_t consistency_slot(Consistency c) {
    switch (c) {
        case Consistency::Consistent: return 0;
        case Consistency::Inconsistent: return 1;
        case Consistency::Neutral: return 2;
        case Consistency::None: break;
    }
    throw std::invalid_argument("Unknown has no consistency class");
}

ConsistencySummary consistency_summary(std::span<const CodeSet> code_sets) {
    ConsistencySummary out;
    std::size_t total = 0;
    for (const auto& set : code_sets) {
        for (auto code : set) {
            if (code == ExternalMICode::Unknown) continue;
            ++out.counts[consistency_slot(classify_consistency(code))];
            ++total;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) out.shares[i] = ratio(out.counts[i], total);
    return out;
}

TranscriptMetrics transcript_metrics(std::span<const Transcript> transcripts) {
    TranscriptMetrics m;
    m.transcripts = transcripts.size();

    struct TurnSums {
        std::size_t transcripts = 0;
        std::size_t agent_chars = 0;
        std::size_t user_chars = 0;
    };
    std::map<std::size_t, TurnSums> turns;
    std::vector<CodeSet> coded_sets;

    for (const auto& t : transcripts) {
        const auto& s = t.session;

        for (const auto& entry : s.strategy_log) {
            ++m.agent_messages;
            ++m.state_messages[dialogue::index_of(entry.state)];
            ++m.strategy_counts[mi::index_of(entry.strategy)];
            auto& by_turn = m.strategy_by_turn[entry.turn_index];
            ++by_turn[mi::index_of(entry.strategy)];

            if (const auto it = t.coded.find(entry.message_index); it != t.coded.end()) {
                if (it->second.coded) {
                    coded_sets.push_back(it->second.merged);
                } else {
                    ++m.uncoded_responses;
                }
            }
        }
        for (const auto& call : s.tool_log) {
            ++m.tool_calls;
            ++m.state_tool_calls[dialogue::index_of(call.state)];
        }

        // Turn lengths: a turn starts at each user message.
        std::map<std::size_t, std::pair<std::size_t, std::size_t>> per_turn;  // agent, user chars
        std::size_t turn = 0;
        bool seen_user = false;
        for (const auto& message : s.history) {
            if (message.role == llm::Role::User) {
                if (seen_user) ++turn;
                seen_user = true;
                per_turn[turn].second += message.content.size();
            } else if (seen_user && orchestrator::is_visible_assistant(message)) {
                per_turn[turn].first += message.content.size();
            }
        }
        for (const auto& [index, chars] : per_turn) {
            auto& sums = turns[index];
            ++sums.transcripts;
            sums.agent_chars += chars.first;
            sums.user_chars += chars.second;
        }
    }

    for (std::size_t i = 0; i < dialogue::kStateCount; ++i) {
        m.state_share[i] = ratio(m.state_messages[i], m.agent_messages);
        m.state_mean_agent_messages[i] = ratio(m.state_messages[i], m.transcripts);
        m.state_tool_share[i] = ratio(m.state_tool_calls[i], m.tool_calls);
    }
    for (std::size_t i = 0; i < mi::kStrategyCount; ++i) {
        m.strategy_share[i] = ratio(m.strategy_counts[i], m.agent_messages);
    }
    for (const auto& [index, sums] : turns) {
        m.turn_lengths.push_back({index, sums.transcripts, ratio(sums.agent_chars, sums.transcripts),
                                  ratio(sums.user_chars, sums.transcripts)});
    }

    m.coded_responses = coded_sets.size();
    std::size_t known_codes = 0;
    std::size_t distinct_total = 0;
    Counts<kExternalCodeSlots> containing{};
    for (const auto& set : coded_sets) {
        for (auto code : set) {
            ++m.code_counts[index_of(code)];
            ++containing[index_of(code)];
            if (code != ExternalMICode::Unknown) {
                ++known_codes;
                ++distinct_total;
            }
        }
    }
    for (std::size_t i = 0; i < kExternalCodeSlots; ++i) {
        const bool unknown = i == index_of(ExternalMICode::Unknown);
        m.code_share[i] = unknown ? 0.0 : ratio(m.code_counts[i], known_codes);
        m.code_containment[i] = ratio(containing[i], m.coded_responses);
    }
    const auto consistency = consistency_summary(coded_sets);
    m.consistency_counts = consistency.counts;
    m.consistency_share = consistency.shares;
    m.mean_codes_per_response = ratio(distinct_total, m.coded_responses);
    return m;
}

std::map<std::size_t, CodedUtterance> code_transcript(const orchestrator::Session& session,
                                                      llm::Provider& coder,
                                                      const CoderOptions& options) {
    std::map<std::size_t, CodedUtterance> out;
    for (const auto& entry : session.strategy_log) {
        if (entry.message_index >= session.history.size()) continue;
        out[entry.message_index] = code_utterance(session.history[entry.message_index].content, coder, options);
    }
    return out;
}

orchestrator::Session load_session_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read session file " + path.string());
    const auto document = nlohmann::json::parse(in);
    if (!document.contains("session")) return document.get<orchestrator::Session>();
    const auto& body = document.at("session");
    if (document.contains("checksum") && util::sha256_hex(body.dump()) != document.at("checksum").get<std::string>()) {
        throw orchestrator::SessionCorruptError("session file " + path.string() + " fails its checksum");
    }
    return body.get<orchestrator::Session>();
}

nlohmann::json coded_corpus_to_json(const CodedCorpus& corpus) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [id, messages] : corpus) {
        auto& entry = out[id] = nlohmann::json::object();
        for (const auto& [index, coded] : messages) entry[std::to_string(index)] = coded;
    }
    return out;
}

CodedCorpus coded_corpus_from_json(const nlohmann::json& j) {
    CodedCorpus out;
    for (const auto& [id, messages] : j.items()) {
        for (const auto& [index, coded] : messages.items()) {
            out[id][std::stoul(index)] = coded.get<CodedUtterance>();
        }
    }
    return out;
}

}  // namespace coach::eval
