#pragma once

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace coach::healthdata {

enum class Aggregation { Sum, Mean, ByType };

std::string_view to_string(Aggregation a) noexcept;

inline constexpr std::string_view kWorkoutSource = "health.workout";

struct SourceInfo {
    std::string name;
    std::string description;
    std::string unit;
    Aggregation aggregation = Aggregation::Sum;
};

/// Name of a catalog data source. Only obtainable through
/// SourceCatalog::resolve, so a DataSourceId always names a catalog entry.
class DataSourceId {
public:
    const std::string& str() const noexcept { return name_; }
    bool is_workout() const noexcept { return name_ == kWorkoutSource; }

    auto operator<=>(const DataSourceId&) const = default;

private:
    friend class SourceCatalog;
    explicit DataSourceId(std::string name) : name_(std::move(name)) {}

    std::string name_;
};

class UnknownSourceError : public std::invalid_argument {
public:
    explicit UnknownSourceError(std::string_view name);
};

class SourceCatalog {
public:
    /// Step count, active/basal energy, flights, walking+running distance,
    /// heart rate and workouts.
    static const SourceCatalog& builtin();

    /// Loads `[{"name", "description", "unit", "aggregation": "sum|mean|by_type"}, ...]`.
    static SourceCatalog from_json(const nlohmann::json& entries);

    explicit SourceCatalog(std::vector<SourceInfo> entries);

    const SourceInfo* find(std::string_view name) const noexcept;
    std::optional<DataSourceId> resolve(std::string_view name) const;
    /// Throws UnknownSourceError.
    DataSourceId require(std::string_view name) const;
    const SourceInfo& info(const DataSourceId& id) const;

    std::span<const SourceInfo> entries() const noexcept { return entries_; }

private:
    std::vector<SourceInfo> entries_;
};

}  // namespace coach::healthdata
