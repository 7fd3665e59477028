#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/healthdata/time.hpp"
#include "coach/healthdata/types.hpp"

namespace coach::tools {

/// Chart data produced by a visualize call. `granularity` is the bar size,
/// one step finer than the requested granularity where one exists (a month
/// or week is charted by day, a day by hour), so the chart shows shape
/// rather than a single bar.
struct VisualizationEvent {
    std::string id;
    std::string source;
    std::string unit;
    healthdata::TimeRange range;
    healthdata::Granularity requested_granularity = healthdata::Granularity::Day;
    healthdata::Granularity granularity = healthdata::Granularity::Day;
    /// Non-workout sources.
    std::vector<healthdata::BucketSummary> buckets;
    /// health.workout.
    std::vector<healthdata::WorkoutSummaryRow> workouts;

    bool operator==(const VisualizationEvent&) const = default;
};

healthdata::Granularity chart_granularity(healthdata::Granularity requested) noexcept;

void to_json(nlohmann::json& j, const VisualizationEvent& event);
void from_json(const nlohmann::json& j, VisualizationEvent& event);

}  // namespace coach::tools
