#include "coach/healthdata/aggregate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace coach::healthdata {

std::vector<BucketSummary> aggregate_samples(std::span<const HealthSample> samples,
                                             const SourceInfo& info,
                                             const TimeRange& range,
                                             Granularity g,
                                             const Zone& zone) {
    if (range.end < range.start) throw std::invalid_argument("end precedes start");
    if (info.aggregation == Aggregation::ByType) {
        throw std::invalid_argument("workouts are summarized by type, not bucketed");
    }

    struct Accumulator {
        Timestamp bucket_end;
        double sum = 0.0;
        std::size_t entries = 0;
    };
    std::map<std::tuple<Timestamp, std::string>, Accumulator> groups;

    for (const auto& s : samples) {
        if (s.source != info.name || !range.contains(s.start)) continue;
        const auto bucket = bucket_of(s.start, g, zone);
        auto& acc = groups[{bucket.start, s.device}];
        acc.bucket_end = bucket.end;
        acc.sum += s.value;
        ++acc.entries;
    }

    std::vector<BucketSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        const double value = info.aggregation == Aggregation::Mean ? acc.sum / static_cast<double>(acc.entries) : acc.sum;
        out.push_back({std::get<0>(key), acc.bucket_end, std::get<1>(key), value, acc.entries});
    }
    return out;
}

std::vector<WorkoutSummaryRow> summarize_workout_records(std::span<const WorkoutRecord> workouts,
                                                         const TimeRange& range) {
    if (range.end < range.start) throw std::invalid_argument("end precedes start");

    std::vector<const WorkoutRecord*> in_range;
    for (const auto& w : workouts) {
        if (range.contains(w.start)) in_range.push_back(&w);
    }
    std::stable_sort(in_range.begin(), in_range.end(),
                     [](const WorkoutRecord* a, const WorkoutRecord* b) { return a->start < b->start; });

    std::vector<WorkoutSummaryRow> rows;
    for (const auto* w : in_range) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const WorkoutSummaryRow& r) { return r.workout_type == w->workout_type; });
        if (it == rows.end()) {
            rows.push_back({w->workout_type, 0, 0.0, 0.0});
            it = std::prev(rows.end());
        }
        ++it->count;
        it->total_minutes += w->duration_minutes;
    }
    for (auto& r : rows) r.mean_minutes = r.total_minutes / static_cast<double>(r.count);
    return rows;
}

}  // namespace coach::healthdata
