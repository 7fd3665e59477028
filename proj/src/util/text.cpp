#include "coach/util/text.hpp"

#include <algorithm>
#include <cctype>

namespace coach::util {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_strippable(char c) { return is_space(c) || std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string_view trim(std::string_view text) noexcept {
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string normalize_verdict(std::string_view text) {
    while (!text.empty() && is_strippable(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_strippable(text.back())) text.remove_suffix(1);
    return to_lower(text);
}

}  // namespace coach::util
