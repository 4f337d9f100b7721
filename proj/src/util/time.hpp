#pragma once

#include <cstdint>
#include <string>

namespace bnsurv {

// UTC timestamp with second resolution. All file formats carry ISO-8601
// "YYYY-MM-DDTHH:MM:SSZ"; all arithmetic is on the epoch-second value so runs
// never depend on the host clock or timezone database.
struct UtcTime {
    std::int64_t seconds = 0;  // seconds since 1970-01-01T00:00:00Z

    friend auto operator<=>(const UtcTime&, const UtcTime&) = default;

    UtcTime plus_seconds(std::int64_t s) const { return UtcTime{seconds + s}; }
    UtcTime plus_hours(std::int64_t h) const { return UtcTime{seconds + h * 3600}; }
    UtcTime plus_days(std::int64_t d) const { return UtcTime{seconds + d * 86400}; }

    double hours_since(const UtcTime& other) const {
        return static_cast<double>(seconds - other.seconds) / 3600.0;
    }
};

// Parses "YYYY-MM-DDTHH:MM:SSZ" (also accepts a space separator and a bare
// date, which reads as midnight). Throws ParseError on anything else.
UtcTime parse_time(const std::string& text);

std::string format_time(UtcTime t);

// Days since the epoch of the calendar date containing t, after shifting by
// utc_offset_minutes. Day boundaries are the calendar midnights of that
// fixed offset.
std::int64_t civil_day(UtcTime t, int utc_offset_minutes = 0);

// Start of the calendar day containing t (in the given fixed offset),
// expressed back in UTC.
UtcTime start_of_day(UtcTime t, int utc_offset_minutes = 0);

// y/m/d <-> day count conversions (proleptic Gregorian).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

}  // namespace bnsurv
