#include "coach/eval/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "coach/util/sha256.hpp"

namespace coach::eval {

namespace {

constexpr std::array<std::string_view, 3> kConsistencyNames{"consistent", "inconsistent", "neutral"};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string num(double v) { return fmt::format("{:.6f}", v); }

std::string escape_xml(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

class Files {
public:
    explicit Files(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        write_file(dir_ / name, content);
        names_.push_back(name);
    }
    std::vector<std::string> names() const { return names_; }

private:
    std::filesystem::path dir_;
    std::vector<std::string> names_;
};

}  // namespace

std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::string& value_format) {
    constexpr int kLabelWidth = 230, kBarWidth = 400, kRow = 22, kTop = 40;
    const int height = kTop + static_cast<int>(labels.size()) * kRow + 20;
    const double max = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
        "font-size=\"12\">\n<text x=\"10\" y=\"22\" font-size=\"15\" font-weight=\"bold\">{}</text>\n",
        kLabelWidth + kBarWidth + 90, height, escape_xml(title));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = kTop + static_cast<int>(i) * kRow;
        const double w = max > 0.0 ? values[i] / max * kBarWidth : 0.0;
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLabelWidth - 6, y + 14,
                           escape_xml(labels[i]));
        svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{:.2f}\" height=\"{}\" fill=\"#4c78a8\"/>\n", kLabelWidth,
                           y + 3, w, kRow - 6);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{}\">{}</text>\n", kLabelWidth + w + 4, y + 14,
                           fmt::format(fmt::runtime(value_format), values[i]));
    }
    return svg + "</svg>\n";
}

std::string line_chart_svg(const std::string& title,
                           const std::vector<double>& x,
                           const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    constexpr int kLeft = 60, kTop = 40, kWidth = 560, kHeight = 260;
    constexpr std::array<std::string_view, 4> kColors{"#4c78a8", "#f58518", "#54a24b", "#e45756"};
    double x_max = 0.0, y_max = 0.0;
    for (double v : x) x_max = std::max(x_max, v);
    for (const auto& [name, ys] : series) {
        for (double v : ys) y_max = std::max(y_max, v);
    }
    auto px = [&](double v) { return kLeft + (x_max > 0 ? v / x_max * kWidth : 0.0); };
    auto py = [&](double v) { return kTop + kHeight - (y_max > 0 ? v / y_max * kHeight : 0.0); };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
        "font-size=\"12\">\n<text x=\"10\" y=\"22\" font-size=\"15\" font-weight=\"bold\">{}</text>\n",
        kLeft + kWidth + 160, kTop + kHeight + 40, escape_xml(title));
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n", kLeft, kTop + kHeight,
                       kLeft + kWidth, kTop + kHeight);
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n", kLeft, kTop, kLeft,
                       kTop + kHeight);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.0f}</text>\n", kLeft - 4, kTop + 4, y_max);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{:.0f}</text>\n", kLeft + kWidth, kTop + kHeight + 16, x_max);
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& [name, ys] = series[s];
        std::string points;
        for (std::size_t i = 0; i < std::min(x.size(), ys.size()); ++i) {
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", px(x[i]), py(ys[i]));
        }
        const auto color = kColors[s % kColors.size()];
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, points);
        svg += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", kLeft + kWidth + 10, kTop + 14 + s * 16,
                           color, escape_xml(name));
    }
    return svg + "</svg>\n";
}

std::vector<std::string> render_report(const TranscriptMetrics& m, const std::filesystem::path& dir) {
    Files files(dir);
    const bool any = m.transcripts > 0;

    std::string states = "state,agent_messages,share,mean_agent_messages,tool_calls,tool_call_share\n";
    std::vector<std::string> state_labels;
    std::vector<double> state_shares;
    if (any) {
        for (auto s : dialogue::kAllStates) {
            const auto i = dialogue::index_of(s);
            states += fmt::format("{},{},{},{},{},{}\n", dialogue::to_string(s), m.state_messages[i],
                                  num(m.state_share[i]), num(m.state_mean_agent_messages[i]), m.state_tool_calls[i],
                                  num(m.state_tool_share[i]));
            state_labels.emplace_back(dialogue::to_string(s));
            state_shares.push_back(m.state_share[i]);
        }
    }
    files.write("states.csv", states);
    files.write("states.svg", bar_chart_svg("Share of agent messages by dialogue state", state_labels, state_shares));

    std::string lengths = "turn_index,transcripts,agent_mean_chars,user_mean_chars\n";
    std::vector<double> xs, agent, user;
    for (const auto& t : m.turn_lengths) {
        lengths += fmt::format("{},{},{},{}\n", t.turn_index, t.transcripts, num(t.agent_mean_chars),
                               num(t.user_mean_chars));
        xs.push_back(static_cast<double>(t.turn_index));
        agent.push_back(t.agent_mean_chars);
        user.push_back(t.user_mean_chars);
    }
    files.write("turn_lengths.csv", lengths);
    files.write("turn_lengths.svg",
                line_chart_svg("Mean message length (characters) by turn", xs, {{"coach", agent}, {"user", user}}));

    std::string strategies = "strategy,count,share\n";
    std::vector<std::string> strategy_labels;
    std::vector<double> strategy_shares;
    if (any) {
        for (const auto& s : mi::strategy_catalog()) {
            const auto i = mi::index_of(s.id);
            strategies += fmt::format("{},{},{}\n", s.identifier, m.strategy_counts[i], num(m.strategy_share[i]));
            strategy_labels.emplace_back(s.display_name);
            strategy_shares.push_back(m.strategy_share[i]);
        }
    }
    files.write("internal_strategies.csv", strategies);
    files.write("internal_strategies.svg",
                bar_chart_svg("Internal strategy distribution", strategy_labels, strategy_shares));

    std::string by_turn = "turn_index,strategy,count\n";
    for (const auto& [turn, counts] : m.strategy_by_turn) {
        for (const auto& s : mi::strategy_catalog()) {
            if (counts[mi::index_of(s.id)] > 0) {
                by_turn += fmt::format("{},{},{}\n", turn, s.identifier, counts[mi::index_of(s.id)]);
            }
        }
    }
    files.write("strategy_by_turn.csv", by_turn);

    std::string codes = "code,consistency,count,share,containment\n";
    std::vector<std::string> code_labels;
    std::vector<double> code_containment;
    if (any && m.coded_responses > 0) {
        for (const auto& c : external_codes()) {
            const auto i = index_of(c.code);
            codes += fmt::format("{},{},{},{},{}\n", c.identifier, to_string(c.consistency), m.code_counts[i],
                                 num(m.code_share[i]), num(m.code_containment[i]));
            code_labels.emplace_back(c.display_name);
            code_containment.push_back(m.code_containment[i]);
        }
        const auto u = index_of(ExternalMICode::Unknown);
        codes += fmt::format("Unknown,none,{},{},{}\n", m.code_counts[u], num(m.code_share[u]),
                             num(m.code_containment[u]));
    }
    files.write("external_codes.csv", codes);
    files.write("external_codes.svg",
                bar_chart_svg("Share of responses containing each external code", code_labels, code_containment));

    std::string consistency = "class,count,share\n";
    std::vector<std::string> class_labels;
    std::vector<double> class_shares;
    if (any && m.coded_responses > 0) {
        for (std::size_t i = 0; i < 3; ++i) {
            consistency += fmt::format("{},{},{}\n", kConsistencyNames[i], m.consistency_counts[i],
                                       num(m.consistency_share[i]));
            class_labels.emplace_back(kConsistencyNames[i]);
            class_shares.push_back(m.consistency_share[i]);
        }
    }
    files.write("consistency.csv", consistency);
    files.write("consistency.svg", bar_chart_svg("MI consistency of coded responses", class_labels, class_shares));

    const nlohmann::json summary{{"transcripts", m.transcripts},
                                 {"agent_messages", m.agent_messages},
                                 {"tool_calls", m.tool_calls},
                                 {"coded_responses", m.coded_responses},
                                 {"uncoded_responses", m.uncoded_responses},
                                 {"mean_codes_per_response", m.mean_codes_per_response}};
    files.write("summary.json", summary.dump(2) + "\n");
    return files.names();
}

std::vector<std::string> render_counterfactual_report(const CounterfactualResult& result,
                                                      const std::filesystem::path& dir) {
    Files files(dir);

    std::string cells = "agent,history,persona,repeat,ok,coded,codes,error,response\n";
    for (const auto& c : result.cells) {
        std::string codes;
        for (auto code : c.coded.merged) {
            if (!codes.empty()) codes += ';';
            codes += to_string(code);
        }
        cells += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(c.agent), csv_field(c.history_id),
                             csv_field(c.persona), c.repeat, c.ok ? 1 : 0, c.ok && c.coded.coded ? 1 : 0, codes,
                             csv_field(c.error), csv_field(c.response));
    }
    files.write("counterfactual_cells.csv", cells);

    std::string containment = "agent,code,containment\n";
    std::string consistency = "agent,class,count,share\n";
    std::string totals = "agent,cells,failed,uncoded,coded\n";
    for (const auto& a : result.aggregates) {
        for (const auto& c : external_codes()) {
            containment += fmt::format("{},{},{}\n", to_string(a.agent), c.identifier, num(a.containment[index_of(c.code)]));
        }
        containment += fmt::format("{},Unknown,{}\n", to_string(a.agent),
                                   num(a.containment[index_of(ExternalMICode::Unknown)]));
        for (std::size_t i = 0; i < 3; ++i) {
            consistency += fmt::format("{},{},{},{}\n", to_string(a.agent), kConsistencyNames[i], a.consistency.counts[i],
                                       num(a.consistency.shares[i]));
        }
        totals += fmt::format("{},{},{},{},{}\n", to_string(a.agent), a.cells, a.failed, a.uncoded, a.coded);

        std::vector<std::string> labels;
        std::vector<double> values;
        for (const auto& c : external_codes()) {
            labels.emplace_back(c.display_name);
            values.push_back(a.containment[index_of(c.code)]);
        }
        files.write(fmt::format("counterfactual_{}.svg", to_string(a.agent)),
                    bar_chart_svg(fmt::format("Responses containing each code ({})", to_string(a.agent)), labels,
                                  values));
    }
    files.write("counterfactual_containment.csv", containment);
    files.write("counterfactual_consistency.csv", consistency);
    files.write("counterfactual_totals.csv", totals);
    return files.names();
}

void write_manifest(const std::filesystem::path& dir, const RunInfo& info, const std::vector<std::string>& files) {
    nlohmann::json hashes = nlohmann::json::object();
    for (const auto& f : files) hashes[f] = util::sha256_hex(read_file(dir / f));
    const nlohmann::json manifest{{"provider", info.provider},
                                  {"model_id", info.model_id},
                                  {"temperature", info.temperature},
                                  {"cassettes", info.cassettes},
                                  {"files", std::move(hashes)}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace coach::eval
