#include "coach/healthdata/store.hpp"

#include <fstream>
#include <mutex>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coach/healthdata/records.hpp"

namespace coach::healthdata {

namespace {

std::string dedup_key(const HealthSample& s) {
    return fmt::format("{}|{}|{}|{}|{:a}", s.source, s.start.time_since_epoch().count(),
                       s.end.time_since_epoch().count(), s.device, s.value);
}

std::string dedup_key(const WorkoutRecord& w) {
    return fmt::format("{}|{}|{}|{}|{}", kWorkoutSource, w.start.time_since_epoch().count(),
                       w.end.time_since_epoch().count(), w.device, w.workout_type);
}

}  // namespace

HealthStore::HealthStore(StoreOptions options) : options_(std::move(options)) {
    if (!options_.directory) return;
    std::filesystem::create_directories(*options_.directory);
    std::ifstream existing(*options_.directory / kRecordsFile);
    if (existing) {
        std::unique_lock lock(mutex_);
        const auto report = ingest_locked(existing, /*persist=*/false);
        if (report.rejected > 0) {
            throw std::runtime_error(fmt::format("health store {} contains {} invalid records (first at line {})",
                                                 options_.directory->string(), report.rejected,
                                                 report.rejections.front().line));
        }
    }
}

HealthStore::Outcome HealthStore::add_locked(const nlohmann::json& record) {
    auto parsed = parse_import_record(record, options_.catalog);
    return std::visit(
        [&](auto&& value) {
            using T = std::decay_t<decltype(value)>;
            if (!keys_.insert(dedup_key(value)).second) return Outcome::Duplicate;
            if constexpr (std::is_same_v<T, HealthSample>) {
                samples_.push_back(std::move(value));
            } else {
                workouts_.push_back(std::move(value));
            }
            return Outcome::Accepted;
        },
        parsed);
}

IngestReport HealthStore::ingest(std::istream& input) {
    std::unique_lock lock(mutex_);
    return ingest_locked(input, /*persist=*/options_.directory.has_value());
}

IngestReport HealthStore::ingest_locked(std::istream& input, bool persist) {
    IngestReport report;
    std::vector<nlohmann::json> accepted;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(input, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        std::vector<nlohmann::json> records;
        try {
            auto value = nlohmann::json::parse(line);
            records = is_fhir_resource(value) ? fhir_to_import(value) : std::vector<nlohmann::json>{std::move(value)};
        } catch (const nlohmann::json::parse_error&) {
            ++report.rejected;
            report.rejections.push_back({line_no, "malformed record: invalid JSON"});
            continue;
        } catch (const RecordError& e) {
            ++report.rejected;
            report.rejections.push_back({line_no, e.what()});
            continue;
        }

        for (const auto& record : records) {
            try {
                if (add_locked(record) == Outcome::Accepted) {
                    ++report.accepted;
                    if (persist) accepted.push_back(record);
                } else {
                    ++report.duplicates;
                }
            } catch (const RecordError& e) {
                ++report.rejected;
                report.rejections.push_back({line_no, e.what()});
            } catch (const nlohmann::json::exception& e) {
                ++report.rejected;
                report.rejections.push_back({line_no, fmt::format("malformed record: {}", e.what())});
            }
        }
    }

    if (persist && !accepted.empty()) {
        std::ofstream out(*options_.directory / kRecordsFile, std::ios::app);
        for (const auto& r : accepted) out << r.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("failed to write health store records");
    }
    return report;
}

std::vector<BucketSummary> HealthStore::aggregate(const DataSourceId& source, const TimeRange& range, Granularity g) const {
    const auto& info = options_.catalog.info(source);
    std::shared_lock lock(mutex_);
    return aggregate_samples(samples_, info, range, g, options_.zone);
}

std::vector<WorkoutSummaryRow> HealthStore::workout_summary(const TimeRange& range) const {
    std::shared_lock lock(mutex_);
    return summarize_workout_records(workouts_, range);
}

std::string HealthStore::render_describe(const DataSourceId& source, const TimeRange& range, Granularity g) const {
    const auto& info = options_.catalog.info(source);
    if (info.aggregation == Aggregation::ByType) {
        const auto rows = workout_summary(range);
        return render_workout_describe_text(info, g, rows);
    }
    const auto buckets = aggregate(source, range, g);
    return render_describe_text(info, g, buckets, options_.zone, options_.line_budget);
}

std::string HealthStore::summarize_workouts(const TimeRange& range) const {
    const auto rows = workout_summary(range);
    return render_workout_rows(rows);
}

std::vector<HealthSample> HealthStore::samples() const {
    std::shared_lock lock(mutex_);
    return samples_;
}

std::vector<WorkoutRecord> HealthStore::workouts() const {
    std::shared_lock lock(mutex_);
    return workouts_;
}

}  // namespace coach::healthdata
