#include "coach/healthdata/time.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace coach::healthdata {

namespace {

constexpr std::array<std::pair<Granularity, std::string_view>, 4> kGranularityNames{{
    {Granularity::Hour, "hour"},
    {Granularity::Day, "day"},
    {Granularity::Week, "week"},
    {Granularity::Month, "month"},
}};

std::optional<int> parse_fixed_offset(std::string_view text) {
    // [+-]HH:MM
    if (text.size() != 6 || (text[0] != '+' && text[0] != '-') || text[3] != ':') {
        return std::nullopt;
    }
    int hours = 0;
    int minutes = 0;
    auto h = std::from_chars(text.data() + 1, text.data() + 3, hours);
    auto m = std::from_chars(text.data() + 4, text.data() + 6, minutes);
    if (h.ec != std::errc{} || m.ec != std::errc{} || hours > 23 || minutes > 59) {
        return std::nullopt;
    }
    int total = hours * 60 + minutes;
    return text[0] == '-' ? -total : total;
}

TimeRange civil_range(absl::CivilSecond first, absl::CivilSecond next, const Zone& zone) {
    const auto start = absl::FromCivil(first, zone.tz());
    const auto stop = absl::FromCivil(next, zone.tz());
    return {from_absl(start), from_absl(stop - absl::Seconds(1))};
}

TimeRange range_for(absl::CivilSecond local, Granularity g, const Zone& zone) {
    switch (g) {
    case Granularity::Hour: {
        const absl::CivilHour h(local);
        return civil_range(absl::CivilSecond(h), absl::CivilSecond(h + 1), zone);
    }
    case Granularity::Day: {
        const absl::CivilDay d(local);
        return civil_range(absl::CivilSecond(d), absl::CivilSecond(d + 1), zone);
    }
    case Granularity::Week: {
        const absl::CivilDay d(local);
        const absl::CivilDay monday = absl::PrevWeekday(d + 1, absl::Weekday::monday);
        return civil_range(absl::CivilSecond(monday), absl::CivilSecond(monday + 7), zone);
    }
    case Granularity::Month: {
        const absl::CivilMonth m(local);
        return civil_range(absl::CivilSecond(m), absl::CivilSecond(m + 1), zone);
    }
    }
    throw std::logic_error("unhandled granularity");
}

}  // namespace

std::string_view to_string(Granularity g) noexcept {
    for (const auto& [value, name] : kGranularityNames) {
        if (value == g) return name;
    }
    return "unknown";
}

std::optional<Granularity> parse_granularity(std::string_view text) noexcept {
    for (const auto& [value, name] : kGranularityNames) {
        if (name == text) return value;
    }
    return std::nullopt;
}

Zone Zone::utc() { return Zone("UTC", absl::UTCTimeZone()); }

Zone Zone::load(std::string_view name) {
    if (name.empty() || name == "UTC" || name == "Z") return utc();
    if (auto offset = parse_fixed_offset(name)) {
        return Zone(std::string(name), absl::FixedTimeZone(*offset * 60));
    }
    absl::TimeZone tz;
    if (!absl::LoadTimeZone(std::string(name), &tz)) {
        throw std::invalid_argument(fmt::format("unknown time zone '{}'", name));
    }
    return Zone(std::string(name), tz);
}

TimeRange bucket_range(absl::CivilDay date, Granularity g, const Zone& zone) {
    return range_for(absl::CivilSecond(date), g, zone);
}

TimeRange bucket_of(Timestamp t, Granularity g, const Zone& zone) {
    return range_for(absl::ToCivilSecond(to_absl(t), zone.tz()), g, zone);
}

std::optional<ParsedInstant> parse_rfc3339(std::string_view text) {
    absl::Time parsed;
    std::string err;
    if (!absl::ParseTime(absl::RFC3339_full, std::string(text), &parsed, &err)) {
        return std::nullopt;
    }
    // absl accepts a trailing zone designator; recover it to keep the offset.
    int offset = 0;
    if (!text.empty() && text.back() != 'Z' && text.back() != 'z' && text.size() >= 6) {
        if (auto o = parse_fixed_offset(text.substr(text.size() - 6))) offset = *o;
    }
    return ParsedInstant{from_absl(parsed), offset};
}

std::optional<absl::CivilDay> parse_date(std::string_view text) {
    absl::CivilDay day;
    if (text.size() != 10 || !absl::ParseCivilTime(absl::string_view(text.data(), text.size()), &day)) return std::nullopt;
    return day;
}

std::optional<Timestamp> parse_range_bound(std::string_view text, const Zone& zone, bool is_end) {
    if (auto instant = parse_rfc3339(text)) return instant->time;
    if (auto day = parse_date(text)) {
        const auto range = bucket_range(*day, Granularity::Day, zone);
        return is_end ? range.end : range.start;
    }
    std::string normalized(text);
    if (normalized.size() > 10 && normalized[10] == 'T') normalized[10] = ' ';
    for (const char* layout : {"%Y-%m-%d %H:%M:%S", "%Y-%m-%d %H:%M"}) {
        absl::Time t;
        std::string err;
        if (absl::ParseTime(layout, normalized, zone.tz(), &t, &err)) return from_absl(t);
    }
    return std::nullopt;
}

std::string format_local(Timestamp t, const char* format, const Zone& zone) {
    return absl::FormatTime(format, to_absl(t), zone.tz());
}

std::string format_rfc3339(Timestamp t, int utc_offset_minutes) {
    const auto tz = utc_offset_minutes == 0 ? absl::UTCTimeZone() : absl::FixedTimeZone(utc_offset_minutes * 60);
    return absl::FormatTime(absl::RFC3339_full, to_absl(t), tz);
}

}  // namespace coach::healthdata
