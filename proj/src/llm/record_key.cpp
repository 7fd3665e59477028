#include "coach/llm/record_key.hpp"

#include "coach/util/sha256.hpp"

namespace coach::llm {

nlohmann::json canonical_form(const CompletionRequest& request) {
    return {
        {"model_id", request.model_id},
        {"temperature", request.temperature},
        {"messages", request.messages},
        {"tools", request.tools},
        {"forced_tool", request.forced_tool ? nlohmann::json(*request.forced_tool) : nlohmann::json(nullptr)},
    };
}

std::string record_key(const CompletionRequest& request) {
    return util::sha256_hex(canonical_form(request).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
}

}  // namespace coach::llm
