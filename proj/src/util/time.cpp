#include "util/time.hpp"

#include <cstdio>

#include "util/error.hpp"

namespace bnsurv {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

UtcTime parse_time(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0, hh = 0, mm = 0, ss = 0;
    char sep = 0, tail = 0;
    int n = std::sscanf(text.c_str(), "%d-%u-%u%c%u:%u:%u%c",
                        &y, &m, &d, &sep, &hh, &mm, &ss, &tail);
    if (n == 3) {
        // bare date -> midnight
    } else if (n >= 7 && (sep == 'T' || sep == ' ') && (n == 7 || tail == 'Z')) {
        // full timestamp, optional trailing Z
    } else {
        fail(ErrorCode::ParseError, "bad timestamp '" + text + "'");
    }
    if (m < 1 || m > 12 || d < 1 || d > 31 || hh > 23 || mm > 59 || ss > 60)
        fail(ErrorCode::ParseError, "bad timestamp '" + text + "'");
    return UtcTime{days_from_civil(y, m, d) * 86400 +
                   static_cast<std::int64_t>(hh) * 3600 + mm * 60 + ss};
}

std::string format_time(UtcTime t) {
    std::int64_t day = t.seconds / 86400;
    std::int64_t sod = t.seconds % 86400;
    if (sod < 0) {
        day -= 1;
        sod += 86400;
    }
    int y;
    unsigned m, d;
    civil_from_days(day, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d,
                  static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod % 3600) / 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

std::int64_t civil_day(UtcTime t, int utc_offset_minutes) {
    std::int64_t shifted = t.seconds + static_cast<std::int64_t>(utc_offset_minutes) * 60;
    std::int64_t day = shifted / 86400;
    if (shifted % 86400 < 0) day -= 1;
    return day;
}

UtcTime start_of_day(UtcTime t, int utc_offset_minutes) {
    std::int64_t day = civil_day(t, utc_offset_minutes);
    return UtcTime{day * 86400 - static_cast<std::int64_t>(utc_offset_minutes) * 60};
}

}  // namespace bnsurv
