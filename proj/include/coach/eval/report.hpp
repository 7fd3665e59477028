#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/eval/counterfactual.hpp"
#include "coach/eval/metrics.hpp"

namespace coach::eval {

/// What produced a set of results; written to manifest.json.
struct RunInfo {
    std::string provider;
    std::string model_id;
    double temperature = 0.0;
    /// Cassette path -> content hash.
    std::map<std::string, std::string> cassettes;
};

/// CSV tables and SVG charts for transcript metrics. Returns the files
/// written, relative to `dir`. With no transcripts, the CSVs hold headers
/// only.
std::vector<std::string> render_report(const TranscriptMetrics& metrics, const std::filesystem::path& dir);

std::vector<std::string> render_counterfactual_report(const CounterfactualResult& result,
                                                      const std::filesystem::path& dir);

/// manifest.json: run info plus the SHA-256 of every listed file.
void write_manifest(const std::filesystem::path& dir, const RunInfo& info, const std::vector<std::string>& files);

/// Horizontal bar chart; deterministic output.
std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::string& value_format = "{:.3f}");

/// Line chart with one or more named series over the same x values.
std::string line_chart_svg(const std::string& title,
                           const std::vector<double>& x,
                           const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace coach::eval
