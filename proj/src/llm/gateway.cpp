#include "coach/llm/gateway.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace coach::llm {

void validate_request(const CompletionRequest& request) {
    if (request.messages.empty()) throw InvalidRequestError("completion request has no messages");
    if (request.messages.front().role != Role::System) {
        throw InvalidRequestError("first message of a completion request must be a system message");
    }
    for (const auto& m : request.messages) {
        try {
            validate(m);
        } catch (const std::invalid_argument& e) {
            throw InvalidRequestError(e.what());
        }
    }
    if (request.forced_tool) {
        const bool present = std::any_of(request.tools.begin(), request.tools.end(),
                                         [&](const ToolSchema& t) { return t.name == *request.forced_tool; });
        if (!present) {
            throw InvalidRequestError(fmt::format("forced tool '{}' is not among the request tools", *request.forced_tool));
        }
    }
}

ToolArguments parse_tool_arguments(std::string_view tool_name, std::string_view raw) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(raw.empty() ? std::string_view("{}") : raw);
    } catch (const nlohmann::json::parse_error&) {
        throw MalformedToolArgumentsError(std::string(tool_name), std::string(raw), "not valid JSON");
    }
    if (!parsed.is_object()) {
        throw MalformedToolArgumentsError(std::string(tool_name), std::string(raw), "not a JSON object");
    }
    ToolArguments out;
    for (const auto& [key, value] : parsed.items()) {
        if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else if (value.is_number() || value.is_boolean()) {
            out[key] = value.dump();
        } else if (!value.is_null()) {
            throw MalformedToolArgumentsError(std::string(tool_name), std::string(raw),
                                              fmt::format("argument '{}' is not a scalar", key));
        }
    }
    return out;
}

ChatMessage complete(const CompletionRequest& request, Provider& provider) {
    validate_request(request);
    const ProviderReply reply = provider.send(request);

    ChatMessage message = ChatMessage::assistant(reply.content);
    for (const auto& raw : reply.tool_calls) {
        const bool registered = std::any_of(request.tools.begin(), request.tools.end(),
                                            [&](const ToolSchema& t) { return t.name == raw.name; });
        if (!registered) {
            throw ContractViolationError(fmt::format("provider called unregistered tool '{}'", raw.name));
        }
        message.tool_calls.push_back({raw.id, raw.name, parse_tool_arguments(raw.name, raw.arguments)});
    }

    if (request.forced_tool) {
        if (message.tool_calls.size() != 1 || message.tool_calls.front().name != *request.forced_tool) {
            throw ContractViolationError(fmt::format("provider did not return exactly one '{}' call as forced",
                                                     *request.forced_tool));
        }
    }
    return message;
}

}  // namespace coach::llm
