#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace txrate {

/// Calendar date in local civil time. No time-zone arithmetic anywhere.
struct Date {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..days_in_month

    friend bool operator==(const Date&, const Date&) = default;
    friend auto operator<=>(const Date&, const Date&) = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const Date& d);

/// Days since 1970-01-01 (proleptic Gregorian).
long long to_serial(const Date& d);
Date from_serial(long long serial);

/// 0 = Sunday .. 6 = Saturday.
int weekday(const Date& d);
bool is_weekend(const Date& d);

/// Day-of-year on a fixed 365-day calendar: Feb 29 does not exist, so in
/// leap years every date after Feb 28 maps to the same index as in a
/// common year. Throws std::invalid_argument for Feb 29 itself.
int day_of_year_365(const Date& d);

/// Inverse of day_of_year_365 for a given year (1 <= d365 <= 365).
Date date_from_day_of_year_365(int year, int d365);

std::optional<Date> parse_date(std::string_view text);  // YYYY-MM-DD
std::string format_date(const Date& d);

/// Designated holidays. Weekends are holidays by rule and need not be listed.
struct HolidayCalendar {
    std::set<Date> dates;

    bool contains(const Date& d) const { return dates.count(d) != 0; }
};

}  // namespace txrate
