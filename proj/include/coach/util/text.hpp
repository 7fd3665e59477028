#pragma once

#include <string>
#include <string_view>

namespace coach::util {

std::string_view trim(std::string_view text) noexcept;
std::string to_lower(std::string_view text);

/// Lowercases and strips surrounding whitespace, quotes and punctuation:
/// " 'Completed.' " -> "completed".
std::string normalize_verdict(std::string_view text);

}  // namespace coach::util
