#include "txrate/calendar.hpp"

#include <charconv>
#include <stdexcept>

namespace txrate {

bool is_leap_year(int year)
{
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month)
{
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) {
        return 0;
    }
    if (month == 2 && is_leap_year(year)) {
        return 29;
    }
    return lengths[month - 1];
}

bool is_valid_date(const Date& d)
{
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

// Civil-from-days / days-from-civil after Howard Hinnant's algorithms.
long long to_serial(const Date& d)
{
    long long y = d.year;
    const int m = d.month;
    const int dy = d.day;
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + dy - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

Date from_serial(long long serial)
{
    long long z = serial + 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned dy = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(dy)};
}

int weekday(const Date& d)
{
    long long z = to_serial(d);
    return static_cast<int>(z >= -4 ? (z + 4) % 7 : (z + 5) % 7 + 6);
}

bool is_weekend(const Date& d)
{
    int wd = weekday(d);
    return wd == 0 || wd == 6;
}

int day_of_year_365(const Date& d)
{
    if (d.month == 2 && d.day == 29) {
        throw std::invalid_argument("day_of_year_365: Feb 29 has no index on the 365-day calendar");
    }
    static const int cumulative[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    return cumulative[d.month - 1] + d.day;
}

Date date_from_day_of_year_365(int year, int d365)
{
    if (d365 < 1 || d365 > 365) {
        throw std::invalid_argument("date_from_day_of_year_365: index out of range");
    }
    static const int cumulative[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
    int month = 12;
    while (month > 1 && cumulative[month - 1] >= d365) {
        --month;
    }
    return Date{year, month, d365 - cumulative[month - 1]};
}

std::optional<Date> parse_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto parse_int = [](std::string_view s, int& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    };
    Date d;
    if (!parse_int(text.substr(0, 4), d.year) || !parse_int(text.substr(5, 2), d.month) ||
        !parse_int(text.substr(8, 2), d.day)) {
        return std::nullopt;
    }
    if (!is_valid_date(d)) {
        return std::nullopt;
    }
    return d;
}

std::string format_date(const Date& d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace txrate
