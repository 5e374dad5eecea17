#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "txrate/calendar.hpp"
#include "txrate/load_shape.hpp"

namespace txrate {

/// One calendar date plus 24 hourly ambient temperatures in degC.
/// Hours missing from the source are NaN until fill_gaps resolves them;
/// a gap-filled day holds 24 finite values within [-60, 60].
struct HourlyTemperatureDay {
    Date date;
    std::array<double, 24> temps{};
};

/// One transformer's one-day record: 24 hourly loads in MVA (all finite,
/// non-negative, at least one positive) plus the day's load composition.
struct TransformerDayObservation {
    std::string transformer_id;
    Date date;
    std::array<double, 24> loads{};
    LoadComposition composition;
};

enum class DayType { workday, holiday };

/// Saturdays, Sundays and listed dates are holidays; everything else is a
/// workday.
DayType classify_day(const Date& date, const HolidayCalendar& calendar);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Reads the weather CSV (header `timestamp,temp_c`, timestamps
/// YYYY-MM-DDTHH:00 local). Returns one entry per calendar date in
/// ascending order, with hours absent from the file left as NaN and
/// Feb 29 rows dropped. Throws ParseError with the offending line number
/// on malformed rows, duplicate (date, hour) pairs, non-numeric or
/// out-of-range temperatures.
std::vector<HourlyTemperatureDay> parse_weather_csv(std::istream& content);

void write_weather_csv(std::ostream& out, std::span<const HourlyTemperatureDay> days);

struct TransformerParseResult {
    std::vector<TransformerDayObservation> observations;  // sorted by (id, date)
    std::vector<std::string> skipped;  // incomplete or all-zero days, with reasons
};

/// Reads the loads CSV (header `transformer_id,timestamp,load_mva`) and the
/// compositions CSV (header `transformer_id,date,r_frac,c_frac,i_frac`) and
/// joins them on (transformer_id, date). Days with missing hours or no
/// positive load are skipped and reported. A load day without a composition
/// row, or a composition violating its bounds, is an error.
TransformerParseResult parse_transformer_csv(std::istream& loads, std::istream& compositions);

/// Inverse of parse_transformer_csv for complete observations: one loads
/// row per hour and one compositions row per (transformer, date).
void write_transformer_csv(std::ostream& loads_out, std::ostream& compositions_out,
                           std::span<const TransformerDayObservation> observations);

struct GapFillResult {
    std::vector<HourlyTemperatureDay> days;
    struct RemovedDay {
        Date date;
        int longest_gap_hours = 0;
    };
    std::vector<RemovedDay> removed;
};

/// Linearly interpolates runs of up to max_gap_hours missing values from
/// their in-day neighbors (runs touching the day boundary extend the
/// nearest value). Days with a longer run are removed and reported.
GapFillResult fill_gaps(std::vector<HourlyTemperatureDay> days, int max_gap_hours);

HolidayCalendar parse_holiday_file(std::istream& content);

/// Reads the forecast composition CSV (header `date_range,r_frac,c_frac,
/// i_frac`). date_range is `all` or inclusive `MM-DD:MM-DD` on the 365-day
/// calendar (ranges may wrap the year end); later rows override earlier
/// ones and every day of year must end up covered.
std::array<LoadComposition, 365> parse_forecast_csv(std::istream& content);

}  // namespace txrate
