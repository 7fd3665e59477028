#include "coach/tools/validate.hpp"

#include <fmt/format.h>

#include "coach/tools/schemas.hpp"

namespace coach::tools {

namespace {

const std::string* find_arg(const llm::ToolCall& call, std::string_view key) {
    const auto it = call.arguments.find(std::string(key));
    return it == call.arguments.end() || it->second.empty() ? nullptr : &it->second;
}

Validation fail(std::string message) { return Validation{std::nullopt, "error: " + std::move(message)}; }

}  // namespace

healthdata::TimeRange date_period(absl::CivilDay date, healthdata::Granularity g, const healthdata::Zone& zone) {
    if (g == healthdata::Granularity::Hour) g = healthdata::Granularity::Day;
    return healthdata::bucket_range(date, g, zone);
}

Validation validate_tool_call(const llm::ToolCall& call,
                              const healthdata::SourceCatalog& catalog,
                              const healthdata::Zone& zone) {
    ToolKind kind;
    if (call.name == kDescribe) {
        kind = ToolKind::Describe;
    } else if (call.name == kVisualize) {
        kind = ToolKind::Visualize;
    } else {
        return fail(fmt::format("unknown tool '{}'", call.name));
    }

    const auto* source_name = find_arg(call, arg::kSource);
    if (!source_name) return fail(fmt::format("missing argument '{}'", arg::kSource));
    const auto source = catalog.resolve(*source_name);
    if (!source) return fail(fmt::format("unknown data source '{}'", *source_name));

    const auto* granularity_text = find_arg(call, arg::kGranularity);
    if (!granularity_text) return fail(fmt::format("missing argument '{}'", arg::kGranularity));
    const auto granularity = healthdata::parse_granularity(*granularity_text);
    if (!granularity) {
        return fail(fmt::format("unknown granularity '{}' (expected hour, day, week or month)", *granularity_text));
    }

    const auto* date_text = find_arg(call, arg::kDate);
    const auto* start_text = find_arg(call, arg::kStart);
    const auto* end_text = find_arg(call, arg::kEnd);

    const bool use_date = kind == ToolKind::Visualize || (!start_text && !end_text && date_text);
    if (use_date) {
        if (!date_text) return fail(fmt::format("missing argument '{}'", arg::kDate));
        // Accept a date with a time part by keeping the date.
        const auto date = healthdata::parse_date(std::string_view(*date_text).substr(0, 10));
        if (!date) return fail(fmt::format("cannot parse date '{}'", *date_text));
        return Validation{ValidatedCall{kind, *source, date_period(*date, *granularity, zone), *granularity, *date},
                          {}};
    }

    if (!start_text) return fail(fmt::format("missing argument '{}'", arg::kStart));
    if (!end_text) return fail(fmt::format("missing argument '{}'", arg::kEnd));
    const auto start = healthdata::parse_range_bound(*start_text, zone, false);
    if (!start) return fail(fmt::format("cannot parse start '{}'", *start_text));
    const auto end = healthdata::parse_range_bound(*end_text, zone, true);
    if (!end) return fail(fmt::format("cannot parse end '{}'", *end_text));
    if (*end < *start) return fail("end precedes start");
    return Validation{ValidatedCall{kind, *source, {*start, *end}, *granularity, std::nullopt}, {}};
}

}  // namespace coach::tools
