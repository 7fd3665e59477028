#include "coach/tools/schemas.hpp"

namespace coach::tools {

namespace {

nlohmann::json string_property(std::string_view description) {
    return {{"type", "string"}, {"description", description}};
}

nlohmann::json granularity_property() {
    return {{"type", "string"}, {"enum", {"hour", "day", "week", "month"}}, {"description", "Bucket size for aggregation."}};
}

}  // namespace

const llm::ToolSchema& describe_schema() {
    static const llm::ToolSchema schema{
        std::string(kDescribe),
        "Summarize the user's health data for one data source between start and end, aggregated at the given "
        "granularity.",
        {{"type", "object"},
         {"properties",
          {{arg::kSource, string_property("Data source, e.g. health.stepcount or health.workout.")},
           {arg::kStart, string_property("Range start, \"YYYY-MM-DD\" or \"YYYY-MM-DD HH:MM:SS\".")},
           {arg::kEnd, string_property("Range end, \"YYYY-MM-DD\" or \"YYYY-MM-DD HH:MM:SS\".")},
           {arg::kGranularity, granularity_property()}}},
         {"required", {arg::kSource, arg::kStart, arg::kEnd, arg::kGranularity}}},
    };
    return schema;
}

const llm::ToolSchema& visualize_schema() {
    static const llm::ToolSchema schema{
        std::string(kVisualize),
        "Same output as describe over the calendar period of the given granularity containing date, and shows the "
        "user a chart of it.",
        {{"type", "object"},
         {"properties",
          {{arg::kSource, string_property("Data source, e.g. health.stepcount or health.workout.")},
           {arg::kDate, string_property("Reference date, \"YYYY-MM-DD\".")},
           {arg::kGranularity, granularity_property()}}},
         {"required", {arg::kSource, arg::kDate, arg::kGranularity}}},
    };
    return schema;
}

const std::vector<llm::ToolSchema>& tool_schemas() {
    static const std::vector<llm::ToolSchema> schemas{describe_schema(), visualize_schema()};
    return schemas;
}

}  // namespace coach::tools
