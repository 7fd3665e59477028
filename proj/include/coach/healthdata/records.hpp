#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "coach/healthdata/catalog.hpp"
#include "coach/healthdata/types.hpp"

namespace coach::healthdata {

/// A record failed validation; what() is the human-readable reason.
class RecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ImportedRecord = std::variant<HealthSample, WorkoutRecord>;

/// Parses one import-format object:
///   {"source", "start", "end", "value", "unit", "device"}
///   {"source": "health.workout", "workout_type", "start", "end"[, "device"]}
/// Timestamps are RFC 3339. Throws RecordError.
ImportedRecord parse_import_record(const nlohmann::json& record, const SourceCatalog& catalog);

nlohmann::json to_import_json(const HealthSample& sample);
nlohmann::json to_import_json(const WorkoutRecord& workout);

bool is_fhir_resource(const nlohmann::json& value) noexcept;

/// Maps a FHIR Observation (or a Bundle of them) to import-format records.
/// Codings are recognized by HealthKit identifier or LOINC code; units are
/// normalized to the catalog's units. Throws RecordError.
std::vector<nlohmann::json> fhir_to_import(const nlohmann::json& resource);

}  // namespace coach::healthdata
