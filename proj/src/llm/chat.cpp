#include "coach/llm/chat.hpp"

#include <array>
#include <stdexcept>

namespace coach::llm {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 4> kRoleNames{{
    {Role::System, "system"},
    {Role::User, "user"},
    {Role::Assistant, "assistant"},
    {Role::Tool, "tool"},
}};

}  // namespace

std::string_view to_string(Role role) noexcept {
    for (const auto& [value, name] : kRoleNames) {
        if (value == role) return name;
    }
    return "unknown";
}

std::optional<Role> parse_role(std::string_view text) noexcept {
    for (const auto& [value, name] : kRoleNames) {
        if (name == text) return value;
    }
    return std::nullopt;
}

ChatMessage ChatMessage::system(std::string content) { return {Role::System, std::move(content), {}, std::nullopt}; }
ChatMessage ChatMessage::user(std::string content) { return {Role::User, std::move(content), {}, std::nullopt}; }
ChatMessage ChatMessage::assistant(std::string content) { return {Role::Assistant, std::move(content), {}, std::nullopt}; }
ChatMessage ChatMessage::tool(std::string tool_call_id, std::string content) {
    return {Role::Tool, std::move(content), {}, std::move(tool_call_id)};
}

void validate(const ChatMessage& message) {
    if (message.role == Role::Tool && !message.tool_call_id) {
        throw std::invalid_argument("tool message without tool_call_id");
    }
    if (message.role != Role::Assistant && message.has_tool_calls()) {
        throw std::invalid_argument("tool calls are only allowed on assistant messages");
    }
}

ProviderReply ProviderReply::text(std::string content) { return {std::move(content), {}}; }

ProviderReply ProviderReply::call(std::string id, std::string name, std::string arguments) {
    return {"", {{std::move(id), std::move(name), std::move(arguments)}}};
}

void to_json(nlohmann::json& j, const ToolCall& call) {
    j = {{"id", call.id}, {"name", call.name}, {"arguments", call.arguments}};
}

void from_json(const nlohmann::json& j, ToolCall& call) {
    j.at("id").get_to(call.id);
    j.at("name").get_to(call.name);
    call.arguments = j.value("arguments", ToolArguments{});
}

void to_json(nlohmann::json& j, const ChatMessage& message) {
    j = {{"role", to_string(message.role)}, {"content", message.content}};
    if (message.has_tool_calls()) j["tool_calls"] = message.tool_calls;
    if (message.tool_call_id) j["tool_call_id"] = *message.tool_call_id;
}

void from_json(const nlohmann::json& j, ChatMessage& message) {
    const auto role = parse_role(j.at("role").get<std::string>());
    if (!role) throw std::invalid_argument("unknown chat role");
    message.role = *role;
    message.content = j.value("content", "");
    message.tool_calls = j.value("tool_calls", std::vector<ToolCall>{});
    if (const auto it = j.find("tool_call_id"); it != j.end() && !it->is_null()) {
        message.tool_call_id = it->get<std::string>();
    } else {
        message.tool_call_id.reset();
    }
}

void to_json(nlohmann::json& j, const ToolSchema& schema) {
    j = {{"name", schema.name}, {"description", schema.description}, {"parameters", schema.parameters}};
}

void from_json(const nlohmann::json& j, ToolSchema& schema) {
    j.at("name").get_to(schema.name);
    schema.description = j.value("description", "");
    schema.parameters = j.value("parameters", nlohmann::json::object());
}

void to_json(nlohmann::json& j, const RawToolCall& call) {
    j = {{"id", call.id}, {"name", call.name}, {"arguments", call.arguments}};
}

void from_json(const nlohmann::json& j, RawToolCall& call) {
    call.id = j.value("id", "");
    j.at("name").get_to(call.name);
    call.arguments = j.value("arguments", "");
}

void to_json(nlohmann::json& j, const ProviderReply& reply) {
    j = {{"content", reply.content}};
    if (!reply.tool_calls.empty()) j["tool_calls"] = reply.tool_calls;
}

void from_json(const nlohmann::json& j, ProviderReply& reply) {
    reply.content = j.value("content", "");
    reply.tool_calls = j.value("tool_calls", std::vector<RawToolCall>{});
}

}  // namespace coach::llm
