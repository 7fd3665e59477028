#pragma once

#include <optional>
#include <string>

#include <absl/time/civil_time.h>

#include "coach/healthdata/catalog.hpp"
#include "coach/healthdata/time.hpp"
#include "coach/llm/chat.hpp"

namespace coach::tools {

enum class ToolKind { Describe, Visualize };

/// A tool call whose arguments passed validation.
struct ValidatedCall {
    ToolKind kind = ToolKind::Describe;
    healthdata::DataSourceId source;
    healthdata::TimeRange range;
    healthdata::Granularity granularity = healthdata::Granularity::Day;
    /// Reference date for date-based calls.
    std::optional<absl::CivilDay> date;
};

struct Validation {
    std::optional<ValidatedCall> call;
    /// Tool-result text ("error: ...") when `call` is empty.
    std::string error;

    bool ok() const noexcept { return call.has_value(); }
};

/// The period a date-based call covers: the calendar bucket containing
/// `date`, except that hour granularity covers the whole day.
healthdata::TimeRange date_period(absl::CivilDay date, healthdata::Granularity g, const healthdata::Zone& zone);

/// Checks, in order: tool name; data_source_name present and in the catalog;
/// granularity present and one of hour/day/week/month; for visualize a
/// parseable date; for describe a parseable start and end (or a date), with
/// end not before start.
Validation validate_tool_call(const llm::ToolCall& call,
                              const healthdata::SourceCatalog& catalog,
                              const healthdata::Zone& zone);

}  // namespace coach::tools
