#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace coach::eval {

/// MISC-derived codes used to rate coach utterances, plus Unknown.
enum class ExternalMICode {
    AdviseWithPermission,
    AdviseWithoutPermission,
    Affirm,
    Confront,
    Direct,
    EmphasizeControl,
    Facilitate,
    Filler,
    GivingInformation,
    OpenQuestion,
    ClosedQuestion,
    RaiseConcernWithPermission,
    RaiseConcernWithoutPermission,
    SimpleReflection,
    ComplexReflection,
    Reframe,
    Structure,
    Support,
    Warn,
    Unknown,
};

inline constexpr std::size_t kExternalCodeCount = 19;
/// Including Unknown.
inline constexpr std::size_t kExternalCodeSlots = kExternalCodeCount + 1;

enum class Consistency { Consistent, Inconsistent, Neutral, None };

inline constexpr std::array kConsistencyClasses{Consistency::Consistent, Consistency::Inconsistent,
                                                Consistency::Neutral};

struct ExternalCodeInfo {
    ExternalMICode code;
    std::string_view identifier;    // "OpenQuestion"
    std::string_view display_name;  // "Open Question"
    Consistency consistency;
    std::string_view definition;
    /// Written for this catalog in the physical-activity setting.
    std::array<std::string_view, 3> examples;
};

/// The 19 codes, without Unknown.
std::span<const ExternalCodeInfo, kExternalCodeCount> external_codes() noexcept;
const ExternalCodeInfo& info(ExternalMICode code);

constexpr std::size_t index_of(ExternalMICode code) noexcept { return static_cast<std::size_t>(code); }
std::string_view to_string(ExternalMICode code) noexcept;
std::string_view display_name(ExternalMICode code) noexcept;

Consistency classify_consistency(ExternalMICode code) noexcept;
std::string_view to_string(Consistency c) noexcept;

/// Display name or identifier, case- and spacing-insensitive; "unknown"
/// gives Unknown. "Closed Quesiton" is accepted as a spelling variant.
std::optional<ExternalMICode> parse_external_code(std::string_view text) noexcept;

}  // namespace coach::eval
