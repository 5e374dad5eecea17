#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "txrate/calendar.hpp"
#include "txrate/ingest.hpp"

namespace txrate {

/// Retrieval features of one historical day: daily mean, max and min
/// ambient plus a seasonal phase term sin(2*pi*D/365) where D is the day
/// of a 365-day year.
struct DayFeatures {
    Date date;
    double mean_c = 0.0;
    double high_c = 0.0;
    double low_c = 0.0;
    double season = 0.0;
    DayType day_type = DayType::workday;
};

DayFeatures compute_day_features(const HourlyTemperatureDay& day, DayType day_type);

/// Min-max scaling of the four feature axes onto [0,1], fit over a
/// reference corpus. Axes with zero spread map to 0; queries outside the
/// fitted range are clamped.
class FeatureNormalizer {
public:
    /// Throws std::invalid_argument on an empty corpus.
    static FeatureNormalizer fit(std::span<const DayFeatures> corpus);

    std::array<double, 4> normalize(const DayFeatures& f) const;

private:
    std::array<double, 4> min_{};
    std::array<double, 4> max_{};
};

enum class Scenario { high, medium, low };

/// 365 synthetic days of hourly ambient for one scenario. Entry d covers
/// day-of-year d+1 and copies the hourly profile of the historical
/// candidate chosen for that day of year, shifted by offset_c.
struct ScenarioProfile {
    Scenario scenario = Scenario::medium;
    double offset_c = 0.0;
    std::array<Date, 365> source_dates{};
    std::array<std::array<double, 24>, 365> temps{};
};

/// For each day of year, candidates are that calendar day across all input
/// years, ordered by (daily mean, year) ascending: low takes the first,
/// high the last, medium the middle (index (n-1)/2, the lower median).
/// Throws std::invalid_argument if any day of year has no candidate.
ScenarioProfile build_scenario_profile(std::span<const HourlyTemperatureDay> history,
                                       Scenario scenario, double offset_c);

const char* scenario_name(Scenario s);

void write_scenario_csv(std::ostream& out, const ScenarioProfile& profile);

struct SimilarDaysResult {
    std::vector<Date> dates;   // nearest first
    bool short_count = false;  // fewer than `count` candidates existed
};

/// The `count` nearest history days to the target by Euclidean distance
/// over the normalized features, restricted to the target's day type.
/// Distance ties break toward the more recent date. Throws
/// std::invalid_argument if no candidate shares the target's day type.
SimilarDaysResult find_similar_days(const DayFeatures& target,
                                    std::span<const DayFeatures> history,
                                    const FeatureNormalizer& normalizer, int count = 5);

}  // namespace txrate
