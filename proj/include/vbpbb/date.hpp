#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vbpbb {

// Proleptic Gregorian calendar date. Kept as plain fields; arithmetic goes
// through the day-number conversions below.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    friend bool operator==(const Date&, const Date&) = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// Days since 1970-01-01 (negative before that).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t z);

Date add_days(const Date& d, std::int64_t n);

// Strict YYYY-MM-DD; throws std::invalid_argument on anything else.
Date parse_date(std::string_view s);
std::string format_date(const Date& d);

}  // namespace vbpbb
