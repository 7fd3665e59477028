#pragma once

#include <string_view>

#include "coach/llm/chat.hpp"
#include "coach/llm/errors.hpp"
#include "coach/llm/provider.hpp"

namespace coach::llm {

/// Throws InvalidRequestError: empty messages, first message not system,
/// forced tool not among the request's tools, or an invalid message.
void validate_request(const CompletionRequest& request);

/// Parses `{"key": "value", ...}`. Numbers and booleans are accepted and
/// kept in their JSON spelling; nested values are rejected.
ToolArguments parse_tool_arguments(std::string_view tool_name, std::string_view raw);

/// Sends `request` and returns the assistant message. The request is not
/// modified. Throws MalformedToolArgumentsError, ContractViolationError, or
/// whatever the provider throws.
ChatMessage complete(const CompletionRequest& request, Provider& provider);

}  // namespace coach::llm
