#pragma once

#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "coach/healthdata/aggregate.hpp"
#include "coach/healthdata/catalog.hpp"
#include "coach/healthdata/render.hpp"
#include "coach/healthdata/types.hpp"

namespace coach::healthdata {

struct IngestRejection {
    std::size_t line = 0;
    std::string reason;
};

struct IngestReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t duplicates = 0;
    std::vector<IngestRejection> rejections;
};

struct StoreOptions {
    /// Per-user store directory; records are kept in memory only when unset.
    std::optional<std::filesystem::path> directory;
    Zone zone = Zone::utc();
    SourceCatalog catalog = SourceCatalog::builtin();
    std::size_t line_budget = kDefaultLineBudget;
};

/// Embedded health-data store. Accepted records are appended to
/// `<directory>/records.ndjson` in import format and deduplicated on
/// (source, start, end, device, value). Reads may run concurrently;
/// ingestion takes the writer lock.
class HealthStore {
public:
    inline static const std::string kRecordsFile = "records.ndjson";

    explicit HealthStore(StoreOptions options = {});
    HealthStore(const HealthStore&) = delete;
    HealthStore& operator=(const HealthStore&) = delete;

    /// Newline-delimited import records or FHIR resources. Blank lines are
    /// skipped; line numbers in the report are 1-based.
    IngestReport ingest(std::istream& input);

    std::vector<BucketSummary> aggregate(const DataSourceId& source, const TimeRange& range, Granularity g) const;
    std::vector<WorkoutSummaryRow> workout_summary(const TimeRange& range) const;

    std::string render_describe(const DataSourceId& source, const TimeRange& range, Granularity g) const;
    /// Workout lines only, without the source line.
    std::string summarize_workouts(const TimeRange& range) const;

    std::vector<HealthSample> samples() const;
    std::vector<WorkoutRecord> workouts() const;

    const Zone& zone() const noexcept { return options_.zone; }
    const SourceCatalog& catalog() const noexcept { return options_.catalog; }
    const std::optional<std::filesystem::path>& directory() const noexcept { return options_.directory; }

private:
    enum class Outcome { Accepted, Duplicate };

    IngestReport ingest_locked(std::istream& input, bool persist);
    Outcome add_locked(const nlohmann::json& record);

    StoreOptions options_;
    mutable std::shared_mutex mutex_;
    std::vector<HealthSample> samples_;
    std::vector<WorkoutRecord> workouts_;
    std::unordered_set<std::string> keys_;
};

}  // namespace coach::healthdata
