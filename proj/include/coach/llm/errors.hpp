#pragma once

#include <stdexcept>
#include <string>

namespace coach::llm {

class LlmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The provider could not be reached, or kept failing after retries.
class TransportError : public LlmError {
public:
    using LlmError::LlmError;
};

class InvalidRequestError : public LlmError {
public:
    using LlmError::LlmError;
};

/// A replay cassette has no entry for the request.
class CacheMissError : public LlmError {
public:
    explicit CacheMissError(std::string key);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Tool-call arguments did not parse as a flat string map.
class MalformedToolArgumentsError : public LlmError {
public:
    MalformedToolArgumentsError(std::string tool_name, std::string raw, const std::string& why);
    const std::string& tool_name() const noexcept { return tool_name_; }
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string tool_name_;
    std::string raw_;
};

/// The provider reply breaks the request contract (unregistered tool,
/// ignored forced tool).
class ContractViolationError : public LlmError {
public:
    using LlmError::LlmError;
};

}  // namespace coach::llm
