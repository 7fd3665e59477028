#include "coach/healthdata/catalog.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace coach::healthdata {

std::string_view to_string(Aggregation a) noexcept {
    switch (a) {
    case Aggregation::Sum: return "sum";
    case Aggregation::Mean: return "mean";
    case Aggregation::ByType: return "by_type";
    }
    return "unknown";
}

UnknownSourceError::UnknownSourceError(std::string_view name)
    : std::invalid_argument(fmt::format("unknown data source '{}'", name)) {}

const SourceCatalog& SourceCatalog::builtin() {
    static const SourceCatalog catalog({
        {"health.stepcount", "Number of steps taken, recorded by iPhone and Apple Watch.", "steps", Aggregation::Sum},
        {"health.activeenergy", "Active energy burned through movement and exercise.", "kcal", Aggregation::Sum},
        {"health.basalenergy", "Basal (resting) energy burned.", "kcal", Aggregation::Sum},
        {"health.flightsclimbed", "Number of flights of stairs climbed.", "count", Aggregation::Sum},
        {"health.distancewalkingrunning", "Distance covered by walking and running.", "km", Aggregation::Sum},
        {"health.heartrate", "Heart rate measurements in beats per minute.", "count/min", Aggregation::Mean},
        {std::string(kWorkoutSource), "Recorded workouts with activity type and duration.", "min", Aggregation::ByType},
    });
    return catalog;
}

SourceCatalog SourceCatalog::from_json(const nlohmann::json& entries) {
    std::vector<SourceInfo> out;
    for (const auto& e : entries) {
        SourceInfo info;
        info.name = e.at("name").get<std::string>();
        info.description = e.value("description", "");
        info.unit = e.at("unit").get<std::string>();
        const auto mode = e.value("aggregation", "sum");
        if (mode == "sum") {
            info.aggregation = Aggregation::Sum;
        } else if (mode == "mean") {
            info.aggregation = Aggregation::Mean;
        } else if (mode == "by_type") {
            info.aggregation = Aggregation::ByType;
        } else {
            throw std::invalid_argument(fmt::format("source '{}': unknown aggregation '{}'", info.name, mode));
        }
        out.push_back(std::move(info));
    }
    return SourceCatalog(std::move(out));
}

SourceCatalog::SourceCatalog(std::vector<SourceInfo> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i].name == entries_[j].name) {
                throw std::invalid_argument(fmt::format("duplicate data source '{}'", entries_[i].name));
            }
        }
    }
}

const SourceInfo* SourceCatalog::find(std::string_view name) const noexcept {
    for (const auto& e : entries_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

std::optional<DataSourceId> SourceCatalog::resolve(std::string_view name) const {
    if (find(name) == nullptr) return std::nullopt;
    return DataSourceId(std::string(name));
}

DataSourceId SourceCatalog::require(std::string_view name) const {
    if (auto id = resolve(name)) return *id;
    throw UnknownSourceError(name);
}

const SourceInfo& SourceCatalog::info(const DataSourceId& id) const {
    if (const auto* e = find(id.str())) return *e;
    throw UnknownSourceError(id.str());
}

}  // namespace coach::healthdata
