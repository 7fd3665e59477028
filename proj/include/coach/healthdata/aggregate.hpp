#pragma once

#include <span>
#include <vector>

#include "coach/healthdata/catalog.hpp"
#include "coach/healthdata/types.hpp"

namespace coach::healthdata {

/// Groups the samples of `info` whose start lies in `range` into calendar
/// buckets of `g` (in `zone`) and devices. Sum sources add values, mean
/// sources average them. Empty buckets are omitted; output is ordered by
/// bucket start, then device name.
std::vector<BucketSummary> aggregate_samples(std::span<const HealthSample> samples,
                                             const SourceInfo& info,
                                             const TimeRange& range,
                                             Granularity g,
                                             const Zone& zone);

/// One row per workout type with a workout starting in `range`, ordered by
/// first occurrence.
std::vector<WorkoutSummaryRow> summarize_workout_records(std::span<const WorkoutRecord> workouts,
                                                         const TimeRange& range);

}  // namespace coach::healthdata
