#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "coach/llm/chat.hpp"

namespace coach::llm {

/// The serialized form hashed by record_key: model id, temperature,
/// messages, tools and forced tool.
nlohmann::json canonical_form(const CompletionRequest& request);

/// SHA-256 over canonical_form(request).dump().
std::string record_key(const CompletionRequest& request);

}  // namespace coach::llm
