#include "vbpbb/date.hpp"

#include <cstdio>
#include <stdexcept>

namespace vbpbb {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) throw std::invalid_argument("month out of range");
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

// Hinnant's civil-from-days / days-from-civil, public domain.
std::int64_t days_from_civil(const Date& d) {
    std::int64_t y = d.year;
    if (d.month <= 2) --y;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (d.month + (d.month > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t day = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t month = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (month <= 2)), static_cast<int>(month),
                static_cast<int>(day)};
}

Date add_days(const Date& d, std::int64_t n) {
    return civil_from_days(days_from_civil(d) + n);
}

Date parse_date(std::string_view s) {
    // exactly YYYY-MM-DD, digits only in the digit slots
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw std::invalid_argument("expected YYYY-MM-DD date");
    auto digits = [&](int from, int to) {
        int v = 0;
        for (int i = from; i < to; ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw std::invalid_argument("expected YYYY-MM-DD date");
            v = v * 10 + (c - '0');
        }
        return v;
    };
    Date d{digits(0, 4), digits(5, 7), digits(8, 10)};
    if (d.month < 1 || d.month > 12) throw std::invalid_argument("month out of range");
    if (d.day < 1 || d.day > days_in_month(d.year, d.month))
        throw std::invalid_argument("day out of range for month");
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace vbpbb
