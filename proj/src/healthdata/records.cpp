#include "coach/healthdata/records.hpp"

#include <cmath>

#include <fmt/format.h>

namespace coach::healthdata {

namespace {

std::string required_string(const nlohmann::json& record, const char* field) {
    const auto it = record.find(field);
    if (it == record.end() || !it->is_string()) {
        throw RecordError(fmt::format("malformed record: missing string field '{}'", field));
    }
    return it->get<std::string>();
}

ParsedInstant required_time(const nlohmann::json& record, const char* field) {
    const auto text = required_string(record, field);
    auto parsed = parse_rfc3339(text);
    if (!parsed) throw RecordError(fmt::format("malformed record: '{}' is not RFC 3339: {}", field, text));
    return *parsed;
}

double minutes_between(Timestamp start, Timestamp end) {
    return std::chrono::duration<double, std::ratio<60>>(end - start).count();
}

}  // namespace

ImportedRecord parse_import_record(const nlohmann::json& record, const SourceCatalog& catalog) {
    if (!record.is_object()) throw RecordError("malformed record: not an object");
    const auto source = required_string(record, "source");
    const auto* info = catalog.find(source);
    if (info == nullptr) throw RecordError(fmt::format("unknown source '{}'", source));

    const auto start = required_time(record, "start");
    const auto end = required_time(record, "end");
    if (end.time < start.time) throw RecordError("start after end");

    if (info->aggregation == Aggregation::ByType) {
        WorkoutRecord w;
        w.workout_type = required_string(record, "workout_type");
        if (w.workout_type.empty()) throw RecordError("malformed record: empty workout_type");
        w.start = start.time;
        w.end = end.time;
        w.utc_offset_minutes = start.utc_offset_minutes;
        w.duration_minutes = minutes_between(start.time, end.time);
        w.device = record.value("device", "");
        if (w.duration_minutes <= 0.0) throw RecordError("workout duration must be positive");
        if (const auto it = record.find("duration_minutes"); it != record.end()) {
            if (!it->is_number() || std::abs(it->get<double>() - w.duration_minutes) > 0.01) {
                throw RecordError("workout duration_minutes disagrees with start/end");
            }
        }
        return w;
    }

    HealthSample s;
    s.source = source;
    s.start = start.time;
    s.end = end.time;
    s.utc_offset_minutes = start.utc_offset_minutes;
    const auto value = record.find("value");
    if (value == record.end() || !value->is_number()) throw RecordError("malformed record: missing numeric field 'value'");
    s.value = value->get<double>();
    if (!std::isfinite(s.value)) throw RecordError("value is not finite");
    s.unit = required_string(record, "unit");
    if (s.unit != info->unit) {
        throw RecordError(fmt::format("unit mismatch: expected '{}', got '{}'", info->unit, s.unit));
    }
    s.device = required_string(record, "device");
    return s;
}

nlohmann::json to_import_json(const HealthSample& sample) {
    return {
        {"source", sample.source},
        {"start", format_rfc3339(sample.start, sample.utc_offset_minutes)},
        {"end", format_rfc3339(sample.end, sample.utc_offset_minutes)},
        {"value", sample.value},
        {"unit", sample.unit},
        {"device", sample.device},
    };
}

nlohmann::json to_import_json(const WorkoutRecord& workout) {
    nlohmann::json out{
        {"source", kWorkoutSource},
        {"workout_type", workout.workout_type},
        {"start", format_rfc3339(workout.start, workout.utc_offset_minutes)},
        {"end", format_rfc3339(workout.end, workout.utc_offset_minutes)},
    };
    if (!workout.device.empty()) out["device"] = workout.device;
    return out;
}

// --- FHIR ------------------------------------------------------------------

namespace {

struct CodeMapping {
    std::string_view code;
    std::string_view source;
};

constexpr CodeMapping kCodeMappings[] = {
    {"HKQuantityTypeIdentifierStepCount", "health.stepcount"},
    {"55423-8", "health.stepcount"},
    {"HKQuantityTypeIdentifierActiveEnergyBurned", "health.activeenergy"},
    {"41981-2", "health.activeenergy"},
    {"HKQuantityTypeIdentifierBasalEnergyBurned", "health.basalenergy"},
    {"HKQuantityTypeIdentifierFlightsClimbed", "health.flightsclimbed"},
    {"HKQuantityTypeIdentifierDistanceWalkingRunning", "health.distancewalkingrunning"},
    {"HKQuantityTypeIdentifierHeartRate", "health.heartrate"},
    {"8867-4", "health.heartrate"},
    {"HKWorkoutTypeIdentifier", "health.workout"},
};

struct UnitMapping {
    std::string_view from;
    std::string_view to;
    double factor;
};

constexpr UnitMapping kUnitMappings[] = {
    {"steps", "steps", 1.0},
    {"count", "count", 1.0},
    {"{steps}", "steps", 1.0},
    {"kcal", "kcal", 1.0},
    {"Cal", "kcal", 1.0},
    {"cal", "kcal", 0.001},
    {"km", "km", 1.0},
    {"m", "km", 0.001},
    {"mi", "km", 1.609344},
    {"count/min", "count/min", 1.0},
    {"beats/minute", "count/min", 1.0},
    {"/min", "count/min", 1.0},
    {"{beats}/min", "count/min", 1.0},
};

std::string_view map_source(const nlohmann::json& observation) {
    const auto code = observation.find("code");
    if (code == observation.end()) throw RecordError("malformed FHIR Observation: missing code");
    for (const auto& coding : code->value("coding", nlohmann::json::array())) {
        const auto value = coding.value("code", "");
        for (const auto& m : kCodeMappings) {
            if (m.code == value) return m.source;
        }
    }
    throw RecordError("unknown source: no recognized Observation coding");
}

std::pair<std::string, std::string> effective_period(const nlohmann::json& observation) {
    if (const auto p = observation.find("effectivePeriod"); p != observation.end()) {
        return {p->value("start", ""), p->value("end", p->value("start", ""))};
    }
    if (const auto t = observation.find("effectiveDateTime"); t != observation.end() && t->is_string()) {
        return {t->get<std::string>(), t->get<std::string>()};
    }
    throw RecordError("malformed FHIR Observation: missing effectivePeriod/effectiveDateTime");
}

std::string device_name(const nlohmann::json& observation) {
    if (const auto d = observation.find("device"); d != observation.end() && d->is_object()) {
        if (d->contains("display")) return d->at("display").get<std::string>();
    }
    return "unknown";
}

nlohmann::json convert_observation(const nlohmann::json& observation) {
    const auto source = map_source(observation);
    const auto [start, end] = effective_period(observation);
    nlohmann::json out{{"source", source}, {"start", start}, {"end", end}};

    if (source == kWorkoutSource) {
        std::string type;
        if (const auto v = observation.find("valueCodeableConcept"); v != observation.end()) {
            type = v->value("text", "");
            if (type.empty() && v->contains("coding") && !v->at("coding").empty()) {
                type = v->at("coding")[0].value("code", "");
            }
        }
        if (type.empty()) throw RecordError("malformed FHIR workout: missing activity type");
        out["workout_type"] = type;
        out["device"] = device_name(observation);
        return out;
    }

    const auto quantity = observation.find("valueQuantity");
    if (quantity == observation.end() || !quantity->contains("value")) {
        throw RecordError("malformed FHIR Observation: missing valueQuantity");
    }
    const auto unit = quantity->value("unit", quantity->value("code", ""));
    const UnitMapping* mapping = nullptr;
    for (const auto& m : kUnitMappings) {
        if (m.from == unit) mapping = &m;
    }
    if (mapping == nullptr) throw RecordError(fmt::format("unit mismatch: unsupported FHIR unit '{}'", unit));
    out["value"] = quantity->at("value").get<double>() * mapping->factor;
    out["unit"] = mapping->to;
    out["device"] = device_name(observation);
    return out;
}

}  // namespace

bool is_fhir_resource(const nlohmann::json& value) noexcept {
    return value.is_object() && value.contains("resourceType");
}

std::vector<nlohmann::json> fhir_to_import(const nlohmann::json& resource) {
    const auto type = resource.value("resourceType", "");
    if (type == "Observation") return {convert_observation(resource)};
    if (type == "Bundle") {
        std::vector<nlohmann::json> out;
        for (const auto& entry : resource.value("entry", nlohmann::json::array())) {
            const auto& inner = entry.contains("resource") ? entry.at("resource") : entry;
            auto converted = fhir_to_import(inner);
            out.insert(out.end(), converted.begin(), converted.end());
        }
        return out;
    }
    throw RecordError(fmt::format("unsupported FHIR resource type '{}'", type));
}

}  // namespace coach::healthdata
