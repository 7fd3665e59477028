#include "coach/llm/errors.hpp"

#include <fmt/format.h>

namespace coach::llm {

CacheMissError::CacheMissError(std::string key)
    : LlmError(fmt::format("replay cassette has no entry for request key {}", key)), key_(std::move(key)) {}

MalformedToolArgumentsError::MalformedToolArgumentsError(std::string tool_name, std::string raw, const std::string& why)
    : LlmError(fmt::format("malformed arguments for tool '{}': {} (raw: {})", tool_name, why, raw)),
      tool_name_(std::move(tool_name)),
      raw_(std::move(raw)) {}

}  // namespace coach::llm
