#pragma once

#include <cstddef>
#include <string>

#include "coach/healthdata/time.hpp"

namespace coach::healthdata {

struct HealthSample {
    std::string source;
    Timestamp start;
    Timestamp end;
    int utc_offset_minutes = 0;
    double value = 0.0;
    std::string unit;
    std::string device;

    bool operator==(const HealthSample&) const = default;
};

struct WorkoutRecord {
    std::string workout_type;
    Timestamp start;
    Timestamp end;
    int utc_offset_minutes = 0;
    double duration_minutes = 0.0;
    std::string device;

    bool operator==(const WorkoutRecord&) const = default;
};

struct BucketSummary {
    Timestamp bucket_start;
    Timestamp bucket_end;
    std::string device;
    double value = 0.0;
    std::size_t entries = 0;

    bool operator==(const BucketSummary&) const = default;
};

struct WorkoutSummaryRow {
    std::string workout_type;
    std::size_t count = 0;
    double total_minutes = 0.0;
    double mean_minutes = 0.0;

    bool operator==(const WorkoutSummaryRow&) const = default;
};

}  // namespace coach::healthdata
