#include "txrate/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "txrate/csv.hpp"

namespace txrate {
namespace {

constexpr double kMinTempC = -60.0;
constexpr double kMaxTempC = 60.0;
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string line_message(std::size_t line, const std::string& message) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ": ";
    os << message;
    return os.str();
}

/// YYYY-MM-DDTHH:00 -> (date, hour). Returns false on any malformation.
bool parse_hour_timestamp(std::string_view text, Date& date, int& hour) {
    if (text.size() != 16 || text[10] != 'T' || text[13] != ':' || text[14] != '0' ||
        text[15] != '0') {
        return false;
    }
    const auto d = parse_date(text.substr(0, 10));
    if (!d) return false;
    if (!parse_int_field(text.substr(11, 2), hour) || hour < 0 || hour > 23) return false;
    date = *d;
    return true;
}

bool is_feb29(const Date& d) { return d.month == 2 && d.day == 29; }

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line_message(line, message)), line_(line) {}

DayType classify_day(const Date& date, const HolidayCalendar& calendar) {
    if (is_weekend(date) || calendar.contains(date)) return DayType::holiday;
    return DayType::workday;
}

std::vector<HourlyTemperatureDay> parse_weather_csv(std::istream& content) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(content, line)) return {};
    ++line_no;
    if (strip_cr(line) != "timestamp,temp_c") {
        throw ParseError(line_no, "expected header 'timestamp,temp_c'");
    }

    std::map<Date, std::array<double, 24>> by_date;
    while (std::getline(content, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        if (fields.size() != 2) throw ParseError(line_no, "expected 2 fields");
        Date date;
        int hour = 0;
        if (!parse_hour_timestamp(fields[0], date, hour)) {
            throw ParseError(line_no, "malformed timestamp (want YYYY-MM-DDTHH:00)");
        }
        double temp = 0.0;
        if (!parse_double_field(fields[1], temp)) {
            throw ParseError(line_no, "non-numeric temperature");
        }
        if (temp < kMinTempC || temp > kMaxTempC) {
            throw ParseError(line_no, "temperature outside [-60, 60] degC");
        }
        if (is_feb29(date)) continue;
        auto [it, inserted] = by_date.try_emplace(date);
        if (inserted) it->second.fill(kMissing);
        if (!std::isnan(it->second[hour])) {
            throw ParseError(line_no, "duplicate (date, hour) row");
        }
        it->second[hour] = temp;
    }

    std::vector<HourlyTemperatureDay> days;
    days.reserve(by_date.size());
    for (const auto& [date, temps] : by_date) days.push_back({date, temps});
    return days;
}

void write_weather_csv(std::ostream& out, std::span<const HourlyTemperatureDay> days) {
    out << "timestamp,temp_c\n";
    for (const auto& day : days) {
        const std::string date_text = format_date(day.date);
        for (int h = 0; h < 24; ++h) {
            if (std::isnan(day.temps[h])) continue;
            char stamp[20];
            std::snprintf(stamp, sizeof stamp, "%sT%02d:00", date_text.c_str(), h);
            out << stamp << ',' << format_double(day.temps[h]) << '\n';
        }
    }
}

TransformerParseResult parse_transformer_csv(std::istream& loads, std::istream& compositions) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(compositions, line) ||
        strip_cr(line) != "transformer_id,date,r_frac,c_frac,i_frac") {
        throw ParseError(1, "expected header 'transformer_id,date,r_frac,c_frac,i_frac'");
    }
    line_no = 1;
    std::map<std::pair<std::string, Date>, LoadComposition> comp_by_key;
    while (std::getline(compositions, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        if (fields.size() != 5) throw ParseError(line_no, "expected 5 fields");
        const auto date = parse_date(fields[1]);
        if (!date) throw ParseError(line_no, "malformed date");
        double r = 0.0, c = 0.0, i = 0.0;
        if (!parse_double_field(fields[2], r) || !parse_double_field(fields[3], c) ||
            !parse_double_field(fields[4], i)) {
            throw ParseError(line_no, "non-numeric composition fraction");
        }
        if (is_feb29(*date)) continue;
        LoadComposition comp;
        try {
            comp = make_composition(r, c, i);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        const auto key = std::make_pair(std::string(fields[0]), *date);
        if (!comp_by_key.emplace(key, comp).second) {
            throw ParseError(line_no, "duplicate composition for (transformer, date)");
        }
    }

    line_no = 0;
    if (!std::getline(loads, line) || strip_cr(line) != "transformer_id,timestamp,load_mva") {
        throw ParseError(1, "expected header 'transformer_id,timestamp,load_mva'");
    }
    line_no = 1;
    std::map<std::pair<std::string, Date>, std::array<double, 24>> load_by_key;
    while (std::getline(loads, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
        Date date;
        int hour = 0;
        if (!parse_hour_timestamp(fields[1], date, hour)) {
            throw ParseError(line_no, "malformed timestamp (want YYYY-MM-DDTHH:00)");
        }
        double mva = 0.0;
        if (!parse_double_field(fields[2], mva) || mva < 0.0) {
            throw ParseError(line_no, "load must be a non-negative number");
        }
        if (is_feb29(date)) continue;
        const auto key = std::make_pair(std::string(fields[0]), date);
        auto [it, inserted] = load_by_key.try_emplace(key);
        if (inserted) it->second.fill(kMissing);
        if (!std::isnan(it->second[hour])) {
            throw ParseError(line_no, "duplicate (transformer, date, hour) row");
        }
        it->second[hour] = mva;
    }

    TransformerParseResult result;
    for (const auto& [key, hours] : load_by_key) {
        const auto& [id, date] = key;
        int missing = 0;
        bool any_positive = false;
        for (double v : hours) {
            if (std::isnan(v)) {
                ++missing;
            } else if (v > 0.0) {
                any_positive = true;
            }
        }
        std::ostringstream skip;
        if (missing > 0) {
            skip << id << ' ' << format_date(date) << ": " << missing << " missing hours";
            result.skipped.push_back(skip.str());
            continue;
        }
        if (!any_positive) {
            skip << id << ' ' << format_date(date) << ": no positive load";
            result.skipped.push_back(skip.str());
            continue;
        }
        const auto comp = comp_by_key.find(key);
        if (comp == comp_by_key.end()) {
            throw ParseError(0, "missing composition for " + id + " on " + format_date(date));
        }
        TransformerDayObservation obs;
        obs.transformer_id = id;
        obs.date = date;
        obs.loads = hours;
        obs.composition = comp->second;
        result.observations.push_back(std::move(obs));
    }
    return result;
}

void write_transformer_csv(std::ostream& loads_out, std::ostream& compositions_out,
                           std::span<const TransformerDayObservation> observations) {
    loads_out << "transformer_id,timestamp,load_mva\n";
    compositions_out << "transformer_id,date,r_frac,c_frac,i_frac\n";
    for (const auto& obs : observations) {
        const std::string date_text = format_date(obs.date);
        for (int h = 0; h < 24; ++h) {
            char stamp[20];
            std::snprintf(stamp, sizeof stamp, "%sT%02d:00", date_text.c_str(), h);
            loads_out << obs.transformer_id << ',' << stamp << ','
                      << format_double(obs.loads[h]) << '\n';
        }
        compositions_out << obs.transformer_id << ',' << date_text << ','
                         << format_double(obs.composition.r) << ','
                         << format_double(obs.composition.c) << ','
                         << format_double(obs.composition.i) << '\n';
    }
}

GapFillResult fill_gaps(std::vector<HourlyTemperatureDay> days, int max_gap_hours) {
    if (max_gap_hours < 0) throw std::invalid_argument("max_gap_hours must be >= 0");
    GapFillResult result;
    for (auto& day : days) {
        int longest = 0;
        int h = 0;
        bool keep = true;
        while (h < 24) {
            if (!std::isnan(day.temps[h])) {
                ++h;
                continue;
            }
            int end = h;
            while (end < 24 && std::isnan(day.temps[end])) ++end;
            const int run = end - h;
            longest = std::max(longest, run);
            if (run > max_gap_hours) {
                keep = false;
                break;
            }
            const bool has_left = h > 0;
            const bool has_right = end < 24;
            if (has_left && has_right) {
                const double left = day.temps[h - 1];
                const double right = day.temps[end];
                for (int i = h; i < end; ++i) {
                    const double t = static_cast<double>(i - (h - 1)) / (run + 1);
                    day.temps[i] = left + (right - left) * t;
                }
            } else if (has_left || has_right) {
                const double edge = has_left ? day.temps[h - 1] : day.temps[end];
                for (int i = h; i < end; ++i) day.temps[i] = edge;
            } else {
                keep = false;  // whole day missing
                break;
            }
            h = end;
        }
        if (keep) {
            result.days.push_back(day);
        } else {
            result.removed.push_back({day.date, longest});
        }
    }
    return result;
}

namespace {

/// MM-DD on the fixed 365-day calendar.
bool parse_month_day(std::string_view text, int& d365) {
    if (text.size() != 5 || text[2] != '-') return false;
    int month = 0, day = 0;
    if (!parse_int_field(text.substr(0, 2), month) || !parse_int_field(text.substr(3, 2), day)) {
        return false;
    }
    const Date date{2001, month, day};  // any common year
    if (!is_valid_date(date)) return false;
    d365 = day_of_year_365(date);
    return true;
}

}  // namespace

std::array<LoadComposition, 365> parse_forecast_csv(std::istream& content) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(content, line) || strip_cr(line) != "date_range,r_frac,c_frac,i_frac") {
        throw ParseError(1, "expected header 'date_range,r_frac,c_frac,i_frac'");
    }
    line_no = 1;
    std::array<LoadComposition, 365> forecast;
    std::array<bool, 365> covered{};
    while (std::getline(content, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields");
        double r = 0.0, c = 0.0, i = 0.0;
        if (!parse_double_field(fields[1], r) || !parse_double_field(fields[2], c) ||
            !parse_double_field(fields[3], i)) {
            throw ParseError(line_no, "non-numeric composition fraction");
        }
        LoadComposition comp;
        try {
            comp = make_composition(r, c, i);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        int start = 1, end = 365;
        if (fields[0] != "all") {
            const auto colon = fields[0].find(':');
            if (colon == std::string_view::npos || !parse_month_day(fields[0].substr(0, colon), start) ||
                !parse_month_day(fields[0].substr(colon + 1), end)) {
                throw ParseError(line_no, "malformed date_range (want 'all' or MM-DD:MM-DD)");
            }
        }
        const auto apply = [&](int from, int to) {
            for (int d = from; d <= to; ++d) {
                forecast[d - 1] = comp;
                covered[d - 1] = true;
            }
        };
        if (start <= end) {
            apply(start, end);
        } else {  // wraps the year end
            apply(start, 365);
            apply(1, end);
        }
    }
    for (int d = 1; d <= 365; ++d) {
        if (!covered[d - 1]) {
            throw ParseError(0, "forecast leaves day of year " + std::to_string(d) +
                                    " uncovered");
        }
    }
    return forecast;
}

HolidayCalendar parse_holiday_file(std::istream& content) {
    HolidayCalendar calendar;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(content, line)) {
        ++line_no;
        const std::string_view row = strip_cr(line);
        if (row.empty() || row.front() == '#') continue;
        const auto date = parse_date(row);
        if (!date) throw ParseError(line_no, "malformed holiday date (want YYYY-MM-DD)");
        calendar.dates.insert(*date);
    }
    return calendar;
}

}  // namespace txrate
