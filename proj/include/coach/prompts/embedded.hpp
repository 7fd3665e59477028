#pragma once

#include <span>
#include <string_view>

namespace coach::prompts::detail {

struct EmbeddedAsset {
    std::string_view name;
    std::string_view content;
};

/// Prompt files and manifest compiled into the binary (generated source).
std::span<const EmbeddedAsset> embedded_assets();

}  // namespace coach::prompts::detail
