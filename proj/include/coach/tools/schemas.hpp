#pragma once

#include <string_view>
#include <vector>

#include "coach/llm/chat.hpp"

namespace coach::tools {

inline constexpr std::string_view kDescribe = "describe";
inline constexpr std::string_view kVisualize = "visualize";

namespace arg {
inline constexpr std::string_view kSource = "data_source_name";
inline constexpr std::string_view kStart = "start";
inline constexpr std::string_view kEnd = "end";
inline constexpr std::string_view kDate = "date";
inline constexpr std::string_view kGranularity = "granularity";
}  // namespace arg

const llm::ToolSchema& describe_schema();
const llm::ToolSchema& visualize_schema();
/// describe, then visualize.
const std::vector<llm::ToolSchema>& tool_schemas();

}  // namespace coach::tools
