#include "coach/tools/event.hpp"

#include <stdexcept>

namespace coach::tools {

namespace {

using healthdata::Granularity;

std::string stamp(healthdata::Timestamp t) { return healthdata::format_rfc3339(t); }

healthdata::Timestamp parse_stamp(const nlohmann::json& j) {
    const auto parsed = healthdata::parse_rfc3339(j.get<std::string>());
    if (!parsed) throw std::invalid_argument("bad timestamp in visualization event: " + j.get<std::string>());
    return parsed->time;
}

Granularity parse_g(const nlohmann::json& j) {
    const auto g = healthdata::parse_granularity(j.get<std::string>());
    if (!g) throw std::invalid_argument("bad granularity in visualization event: " + j.get<std::string>());
    return *g;
}

}  // namespace

Granularity chart_granularity(Granularity requested) noexcept {
    switch (requested) {
        case Granularity::Month:
        case Granularity::Week: return Granularity::Day;
        case Granularity::Day:
        case Granularity::Hour: return Granularity::Hour;
    }
    return requested;
}

void to_json(nlohmann::json& j, const VisualizationEvent& event) {
    auto buckets = nlohmann::json::array();
    for (const auto& b : event.buckets) {
        buckets.push_back({{"start", stamp(b.bucket_start)},
                           {"end", stamp(b.bucket_end)},
                           {"device", b.device},
                           {"value", b.value},
                           {"entries", b.entries}});
    }
    auto workouts = nlohmann::json::array();
    for (const auto& w : event.workouts) {
        workouts.push_back({{"workout_type", w.workout_type},
                            {"count", w.count},
                            {"total_minutes", w.total_minutes},
                            {"mean_minutes", w.mean_minutes}});
    }
    j = {{"id", event.id},
         {"source", event.source},
         {"unit", event.unit},
         {"start", stamp(event.range.start)},
         {"end", stamp(event.range.end)},
         {"requested_granularity", healthdata::to_string(event.requested_granularity)},
         {"granularity", healthdata::to_string(event.granularity)},
         {"buckets", std::move(buckets)},
         {"workouts", std::move(workouts)}};
}

void from_json(const nlohmann::json& j, VisualizationEvent& event) {
    event.id = j.at("id").get<std::string>();
    event.source = j.at("source").get<std::string>();
    event.unit = j.at("unit").get<std::string>();
    event.range = {parse_stamp(j.at("start")), parse_stamp(j.at("end"))};
    event.requested_granularity = parse_g(j.at("requested_granularity"));
    event.granularity = parse_g(j.at("granularity"));
    event.buckets.clear();
    for (const auto& b : j.at("buckets")) {
        event.buckets.push_back({parse_stamp(b.at("start")), parse_stamp(b.at("end")), b.at("device").get<std::string>(),
                                 b.at("value").get<double>(), b.at("entries").get<std::size_t>()});
    }
    event.workouts.clear();
    for (const auto& w : j.at("workouts")) {
        event.workouts.push_back({w.at("workout_type").get<std::string>(), w.at("count").get<std::size_t>(),
                                  w.at("total_minutes").get<double>(), w.at("mean_minutes").get<double>()});
    }
}

}  // namespace coach::tools
