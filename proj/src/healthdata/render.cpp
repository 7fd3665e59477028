#include "coach/healthdata/render.hpp"

#include <cmath>

#include <fmt/format.h>

namespace coach::healthdata {

namespace {

constexpr const char* kBucketTimeFormat = "%Y-%m-%d-%H-%M";

std::string_view granularity_adjective(Granularity g) {
    switch (g) {
    case Granularity::Hour: return "hourly";
    case Granularity::Day: return "daily";
    case Granularity::Week: return "weekly";
    case Granularity::Month: return "monthly";
    }
    return "";
}

}  // namespace

std::string source_description_line(const SourceInfo& info, Granularity g) {
    switch (info.aggregation) {
    case Aggregation::Sum:
        return fmt::format("{}: {} Values are {} totals in {} per device.", info.name, info.description,
                           granularity_adjective(g), info.unit);
    case Aggregation::Mean:
        return fmt::format("{}: {} Values are {} averages in {} per device.", info.name, info.description,
                           granularity_adjective(g), info.unit);
    case Aggregation::ByType:
        return fmt::format("{}: {} Durations are totals in minutes per workout type.", info.name, info.description);
    }
    return info.name;
}

std::string render_bucket_lines(std::span<const BucketSummary> buckets,
                                std::string_view unit,
                                const Zone& zone,
                                std::size_t line_budget) {
    std::string out;
    std::size_t written = 0;
    for (const auto& b : buckets) {
        if (written == line_budget) {
            if (written > 0) out += '\n';
            out += kTruncatedText;
            return out;
        }
        if (written > 0) out += '\n';
        out += fmt::format("{} to {}: {:.2f} {} from {} ({} entries)", format_local(b.bucket_start, kBucketTimeFormat, zone),
                           format_local(b.bucket_end, kBucketTimeFormat, zone), b.value, unit, b.device, b.entries);
        ++written;
    }
    return out;
}

std::string render_workout_line(const WorkoutSummaryRow& row) {
    // Hours/minutes follow the displayed two-decimal total, not the raw sum.
    const double shown_total = std::round(row.total_minutes * 100.0) / 100.0;
    const auto whole_minutes = static_cast<long long>(std::floor(shown_total));
    return fmt::format(" - {}: {} workouts, {:.2f} mins/workout, {:.2f} mins  ({}h{}m)  total", row.workout_type,
                       row.count, row.mean_minutes, row.total_minutes, whole_minutes / 60, whole_minutes % 60);
}

std::string render_workout_rows(std::span<const WorkoutSummaryRow> rows) {
    if (rows.empty()) return std::string(kNoWorkoutsText);
    std::string out;
    for (const auto& r : rows) {
        if (!out.empty()) out += '\n';
        out += render_workout_line(r);
    }
    return out;
}

std::string render_describe_text(const SourceInfo& info,
                                 Granularity g,
                                 std::span<const BucketSummary> buckets,
                                 const Zone& zone,
                                 std::size_t line_budget) {
    std::string out = source_description_line(info, g);
    out += '\n';
    if (buckets.empty()) {
        out += kNoDataText;
    } else {
        out += render_bucket_lines(buckets, info.unit, zone, line_budget);
    }
    return out;
}

std::string render_workout_describe_text(const SourceInfo& info,
                                         Granularity g,
                                         std::span<const WorkoutSummaryRow> rows) {
    return source_description_line(info, g) + '\n' + render_workout_rows(rows);
}

}  // namespace coach::healthdata
