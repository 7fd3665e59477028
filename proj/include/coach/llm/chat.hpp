#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace coach::llm {

inline constexpr std::string_view kDefaultModelId = "gpt-4-0613";
inline constexpr double kDefaultTemperature = 1.0;

enum class Role { System, User, Assistant, Tool };

std::string_view to_string(Role role) noexcept;
std::optional<Role> parse_role(std::string_view text) noexcept;

using ToolArguments = std::map<std::string, std::string>;

struct ToolCall {
    std::string id;
    std::string name;
    ToolArguments arguments;

    bool operator==(const ToolCall&) const = default;
};

/// Invariants: role == Tool implies tool_call_id; tool_calls only on Assistant.
struct ChatMessage {
    Role role = Role::User;
    std::string content;
    std::vector<ToolCall> tool_calls;
    std::optional<std::string> tool_call_id;

    static ChatMessage system(std::string content);
    static ChatMessage user(std::string content);
    static ChatMessage assistant(std::string content);
    static ChatMessage tool(std::string tool_call_id, std::string content);

    bool has_tool_calls() const noexcept { return !tool_calls.empty(); }
    bool operator==(const ChatMessage&) const = default;
};

/// Throws std::invalid_argument when a message breaks its invariants.
void validate(const ChatMessage& message);

struct ToolSchema {
    std::string name;
    std::string description;
    nlohmann::json parameters;

    bool operator==(const ToolSchema&) const = default;
};

struct CompletionRequest {
    std::vector<ChatMessage> messages;
    std::vector<ToolSchema> tools;
    double temperature = kDefaultTemperature;
    std::optional<std::string> forced_tool;
    std::string model_id{kDefaultModelId};
    /// Which chain issued the request. Used for routing scripted replies and
    /// for logs; it does not participate in the record key.
    std::string stage;
};

/// Provider output before the gateway validates it. Tool-call arguments are
/// kept as the raw text the model produced.
struct RawToolCall {
    std::string id;
    std::string name;
    std::string arguments;

    bool operator==(const RawToolCall&) const = default;
};

struct ProviderReply {
    std::string content;
    std::vector<RawToolCall> tool_calls;

    static ProviderReply text(std::string content);
    static ProviderReply call(std::string id, std::string name, std::string arguments);

    bool operator==(const ProviderReply&) const = default;
};

void to_json(nlohmann::json& j, const ToolCall& call);
void from_json(const nlohmann::json& j, ToolCall& call);
void to_json(nlohmann::json& j, const ChatMessage& message);
void from_json(const nlohmann::json& j, ChatMessage& message);
void to_json(nlohmann::json& j, const ToolSchema& schema);
void from_json(const nlohmann::json& j, ToolSchema& schema);
void to_json(nlohmann::json& j, const RawToolCall& call);
void from_json(const nlohmann::json& j, RawToolCall& call);
void to_json(nlohmann::json& j, const ProviderReply& reply);
void from_json(const nlohmann::json& j, ProviderReply& reply);

}  // namespace coach::llm
