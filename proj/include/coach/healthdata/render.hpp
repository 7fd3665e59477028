#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "coach/healthdata/catalog.hpp"
#include "coach/healthdata/types.hpp"

namespace coach::healthdata {

inline constexpr std::size_t kDefaultLineBudget = 60;
inline constexpr std::string_view kNoDataText = "No data recorded in this period.";
inline constexpr std::string_view kNoWorkoutsText = "No workouts recorded in this period.";
inline constexpr std::string_view kTruncatedText = "... (output truncated)";

std::string source_description_line(const SourceInfo& info, Granularity g);

/// `<start> to <end>: <value> <unit> from <device> (<n> entries)`, one line per
/// bucket, at most `line_budget` lines followed by the truncation marker.
std::string render_bucket_lines(std::span<const BucketSummary> buckets,
                                std::string_view unit,
                                const Zone& zone,
                                std::size_t line_budget = kDefaultLineBudget);

std::string render_workout_line(const WorkoutSummaryRow& row);
std::string render_workout_rows(std::span<const WorkoutSummaryRow> rows);

/// Full describe output: the source line, then the bucket lines (or the
/// no-data line).
std::string render_describe_text(const SourceInfo& info,
                                 Granularity g,
                                 std::span<const BucketSummary> buckets,
                                 const Zone& zone,
                                 std::size_t line_budget = kDefaultLineBudget);

std::string render_workout_describe_text(const SourceInfo& info,
                                         Granularity g,
                                         std::span<const WorkoutSummaryRow> rows);

}  // namespace coach::healthdata
