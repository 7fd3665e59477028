#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace coach::mi {

/// Motivational-interviewing strategies the coach conditions each response on.
enum class InternalStrategy {
    AdviseWithPermission,
    Affirm,
    Facilitate,
    Filler,
    GivingInformation,
    Question,
    RaiseConcern,
    Reflect,
    Reframe,
    Support,
    Structure,
};

inline constexpr std::size_t kStrategyCount = 11;

struct StrategyInfo {
    InternalStrategy id;
    std::string_view identifier;    // "AdviseWithPermission"
    std::string_view display_name;  // "Advise with Permission"
    std::string_view description;
    std::string_view example;
};

std::span<const StrategyInfo, kStrategyCount> strategy_catalog() noexcept;
const StrategyInfo& info(InternalStrategy strategy) noexcept;

constexpr std::size_t index_of(InternalStrategy s) noexcept { return static_cast<std::size_t>(s); }
std::string_view to_string(InternalStrategy strategy) noexcept;

/// Matches an identifier or display name, ignoring case, spaces,
/// hyphens and underscores ("raise concern", "RaiseConcern").
std::optional<InternalStrategy> parse_strategy_name(std::string_view text) noexcept;

}  // namespace coach::mi
