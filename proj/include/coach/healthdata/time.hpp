#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <absl/time/civil_time.h>
#include <absl/time/time.h>

namespace coach::healthdata {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

enum class Granularity { Hour, Day, Week, Month };

std::string_view to_string(Granularity g) noexcept;
std::optional<Granularity> parse_granularity(std::string_view text) noexcept;

/// A closed time interval at second resolution: `end` names the last second
/// covered, so an end of 23:59:59 includes 23:59:59.999.
struct TimeRange {
    Timestamp start;
    Timestamp end;

    bool contains(Timestamp t) const noexcept {
        return t >= start && t < end + std::chrono::seconds{1};
    }
    bool operator==(const TimeRange&) const = default;
};

/// The time zone used for calendar bucketing. Accepts "UTC", IANA names
/// ("Europe/Berlin") and fixed offsets ("+05:30", "-08:00").
class Zone {
public:
    static Zone utc();
    /// Throws std::invalid_argument for an unknown zone name.
    static Zone load(std::string_view name);

    const std::string& name() const noexcept { return name_; }
    const absl::TimeZone& tz() const noexcept { return tz_; }

private:
    Zone(std::string name, absl::TimeZone tz) : name_(std::move(name)), tz_(tz) {}

    std::string name_;
    absl::TimeZone tz_;
};

inline absl::Time to_absl(Timestamp t) { return absl::FromUnixMillis(t.time_since_epoch().count()); }
inline Timestamp from_absl(absl::Time t) { return Timestamp{std::chrono::milliseconds{absl::ToUnixMillis(t)}}; }

/// The calendar bucket containing `date`. Weeks run Monday to Sunday; an
/// hour bucket for a date is its first hour.
TimeRange bucket_range(absl::CivilDay date, Granularity g, const Zone& zone);

/// The calendar bucket containing instant `t`.
TimeRange bucket_of(Timestamp t, Granularity g, const Zone& zone);

struct ParsedInstant {
    Timestamp time;
    int utc_offset_minutes = 0;
};

/// Strict RFC 3339 ("2024-02-23T08:00:00-08:00", "...Z", optional fraction).
std::optional<ParsedInstant> parse_rfc3339(std::string_view text);

/// Calendar date "YYYY-MM-DD".
std::optional<absl::CivilDay> parse_date(std::string_view text);

/// Parses a range bound as written by a model: RFC 3339, "YYYY-MM-DD HH:MM[:SS]"
/// or a bare date, the latter two interpreted in `zone`. A bare date used as an
/// end bound means the last second of that day.
std::optional<Timestamp> parse_range_bound(std::string_view text, const Zone& zone, bool is_end);

std::string format_local(Timestamp t, const char* format, const Zone& zone);
std::string format_rfc3339(Timestamp t, int utc_offset_minutes = 0);

}  // namespace coach::healthdata
