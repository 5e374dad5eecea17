#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "txrate/temperature.hpp"

using namespace txrate;

namespace {

HourlyTemperatureDay flat_day(const Date& date, double temp) {
    HourlyTemperatureDay day{date, {}};
    day.temps.fill(temp);
    return day;
}

DayFeatures raw_features(const Date& date, double mean, double high, double low, double season,
                         DayType type = DayType::workday) {
    DayFeatures f;
    f.date = date;
    f.mean_c = mean;
    f.high_c = high;
    f.low_c = low;
    f.season = season;
    f.day_type = type;
    return f;
}

}  // namespace

TEST_CASE("compute_day_features takes mean, extremes and seasonal phase") {
    HourlyTemperatureDay day{Date{2017, 4, 1}, {}};
    for (int h = 0; h < 24; ++h) day.temps[h] = 10.0 + h;  // 10..33
    const auto f = compute_day_features(day, DayType::workday);
    CHECK(f.mean_c == doctest::Approx(21.5));
    CHECK(f.high_c == 33.0);
    CHECK(f.low_c == 10.0);
    const int d = day_of_year_365(Date{2017, 4, 1});
    CHECK(f.season ==
          doctest::Approx(std::sin(2.0 * std::numbers::pi * d / 365.0)).epsilon(1e-12));
    CHECK(f.day_type == DayType::workday);
}

TEST_CASE("normalizer maps fitted extremes to the unit interval") {
    std::vector<DayFeatures> corpus = {
        raw_features(Date{2017, 1, 1}, 0.0, 5.0, -5.0, -1.0),
        raw_features(Date{2017, 7, 1}, 20.0, 30.0, 10.0, 1.0),
    };
    const auto norm = FeatureNormalizer::fit(corpus);
    const auto lo = norm.normalize(corpus[0]);
    const auto hi = norm.normalize(corpus[1]);
    for (int a = 0; a < 4; ++a) {
        CHECK(lo[a] == doctest::Approx(0.0));
        CHECK(hi[a] == doctest::Approx(1.0));
    }
    const auto mid = norm.normalize(raw_features(Date{2017, 4, 1}, 10.0, 17.5, 2.5, 0.0));
    CHECK(mid[0] == doctest::Approx(0.5));
    CHECK(mid[1] == doctest::Approx(0.5));
    CHECK(mid[2] == doctest::Approx(0.5));
    CHECK(mid[3] == doctest::Approx(0.5));
}

TEST_CASE("normalizer clamps queries outside the fitted range") {
    std::vector<DayFeatures> corpus = {
        raw_features(Date{2017, 1, 1}, 0.0, 5.0, -5.0, -1.0),
        raw_features(Date{2017, 7, 1}, 20.0, 30.0, 10.0, 1.0),
    };
    const auto norm = FeatureNormalizer::fit(corpus);
    const auto out = norm.normalize(raw_features(Date{2017, 8, 1}, 40.0, 50.0, -20.0, 2.0));
    CHECK(out[0] == 1.0);
    CHECK(out[1] == 1.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 1.0);
}

TEST_CASE("normalizer maps zero-spread axes to 0") {
    std::vector<DayFeatures> corpus = {
        raw_features(Date{2017, 1, 1}, 5.0, 8.0, 2.0, 0.3),
        raw_features(Date{2017, 1, 2}, 5.0, 9.0, 1.0, 0.3),
    };
    const auto norm = FeatureNormalizer::fit(corpus);
    const auto out = norm.normalize(corpus[1]);
    CHECK(out[0] == 0.0);
    CHECK(out[3] == 0.0);
    CHECK(out[1] == doctest::Approx(1.0));
}

TEST_CASE("normalizer rejects an empty corpus") {
    CHECK_THROWS_AS(FeatureNormalizer::fit({}), std::invalid_argument);
}

TEST_CASE("scenario profile picks candidates by daily mean per day of year") {
    std::vector<HourlyTemperatureDay> history;
    for (int year : {2014, 2015, 2016}) {
        const double base = year == 2014 ? 0.0 : (year == 2015 ? 4.0 : 2.0);
        for (int d = 1; d <= 365; ++d) {
            history.push_back(flat_day(date_from_day_of_year_365(year, d), base + 0.01 * d));
        }
    }
    const auto high = build_scenario_profile(history, Scenario::high, 0.0);
    const auto medium = build_scenario_profile(history, Scenario::medium, 0.0);
    const auto low = build_scenario_profile(history, Scenario::low, 0.0);
    CHECK(high.source_dates[0].year == 2015);
    CHECK(medium.source_dates[0].year == 2016);
    CHECK(low.source_dates[0].year == 2014);
    for (int d = 0; d < 365; ++d) {
        CHECK(high.temps[d][0] >= medium.temps[d][0]);
        CHECK(medium.temps[d][0] >= low.temps[d][0]);
    }
}

TEST_CASE("scenario medium takes the lower median on even candidate counts") {
    std::vector<HourlyTemperatureDay> history;
    for (int year : {2014, 2015}) {
        for (int d = 1; d <= 365; ++d) {
            history.push_back(
                flat_day(date_from_day_of_year_365(year, d), year == 2014 ? 1.0 : 9.0));
        }
    }
    const auto medium = build_scenario_profile(history, Scenario::medium, 0.0);
    CHECK(medium.source_dates[10].year == 2014);
    CHECK(medium.temps[10][0] == 1.0);
}

TEST_CASE("scenario offset shifts every hour by exactly the offset") {
    std::vector<HourlyTemperatureDay> history;
    for (int d = 1; d <= 365; ++d) {
        HourlyTemperatureDay day{date_from_day_of_year_365(2017, d), {}};
        for (int h = 0; h < 24; ++h) day.temps[h] = 3.0 + 0.1 * h + 0.01 * d;
        history.push_back(day);
    }
    const auto base = build_scenario_profile(history, Scenario::medium, 0.0);
    const auto shifted = build_scenario_profile(history, Scenario::medium, 1.0);
    for (int d = 0; d < 365; ++d) {
        for (int h = 0; h < 24; ++h) {
            CHECK(shifted.temps[d][h] == base.temps[d][h] + 1.0);
        }
    }
}

TEST_CASE("scenario profile requires every day of year") {
    std::vector<HourlyTemperatureDay> history;
    for (int d = 1; d <= 364; ++d) {
        history.push_back(flat_day(date_from_day_of_year_365(2017, d), 5.0));
    }
    CHECK_THROWS_AS(build_scenario_profile(history, Scenario::low, 0.0), std::invalid_argument);
}

TEST_CASE("scenario csv lists one row per day and hour") {
    std::vector<HourlyTemperatureDay> history;
    for (int d = 1; d <= 365; ++d) {
        history.push_back(flat_day(date_from_day_of_year_365(2017, d), 5.0));
    }
    const auto profile = build_scenario_profile(history, Scenario::high, 0.0);
    std::ostringstream out;
    write_scenario_csv(out, profile);
    std::istringstream lines(out.str());
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "day_index,source_date,hour,temp_c");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 365 * 24);
}

TEST_CASE("similar days rank by normalized euclidean distance") {
    // Anchor corpus pins the normalization so coordinates read as given.
    std::vector<DayFeatures> history = {
        raw_features(Date{2016, 1, 1}, 0.0, 0.0, 0.0, 0.0),
        raw_features(Date{2016, 7, 1}, 1.0, 1.0, 1.0, 1.0),
        raw_features(Date{2016, 3, 1}, 0.4, 0.4, 0.4, 0.4),
    };
    const auto norm = FeatureNormalizer::fit(history);
    const auto target = raw_features(Date{2017, 2, 1}, 0.5, 0.5, 0.5, 0.5);
    const auto result = find_similar_days(target, history, norm, 2);
    REQUIRE(result.dates.size() == 2);
    CHECK(result.dates[0] == Date{2016, 3, 1});  // distance 0.2 beats 1.0
    CHECK(result.dates[1] == Date{2016, 7, 1});
}

TEST_CASE("similar days restrict to the target's day type") {
    std::vector<DayFeatures> history = {
        raw_features(Date{2016, 1, 4}, 0.5, 0.5, 0.5, 0.5, DayType::workday),
        raw_features(Date{2016, 1, 2}, 0.5, 0.5, 0.5, 0.5, DayType::holiday),
    };
    const auto norm = FeatureNormalizer::fit(history);
    const auto target = raw_features(Date{2017, 1, 7}, 0.5, 0.5, 0.5, 0.5, DayType::holiday);
    const auto result = find_similar_days(target, history, norm, 5);
    REQUIRE(result.dates.size() == 1);
    CHECK(result.dates[0] == Date{2016, 1, 2});
    CHECK(result.short_count);
}

TEST_CASE("similar days break distance ties toward the more recent date") {
    std::vector<DayFeatures> history = {
        raw_features(Date{2014, 6, 1}, 0.5, 0.5, 0.5, 0.5),
        raw_features(Date{2016, 6, 1}, 0.5, 0.5, 0.5, 0.5),
        raw_features(Date{2015, 6, 1}, 0.5, 0.5, 0.5, 0.5),
        raw_features(Date{2016, 1, 1}, 0.0, 0.0, 0.0, 0.0),
        raw_features(Date{2016, 12, 1}, 1.0, 1.0, 1.0, 1.0),
    };
    const auto norm = FeatureNormalizer::fit(history);
    const auto target = raw_features(Date{2017, 6, 1}, 0.5, 0.5, 0.5, 0.5);
    const auto result = find_similar_days(target, history, norm, 3);
    REQUIRE(result.dates.size() == 3);
    CHECK(result.dates[0] == Date{2016, 6, 1});
    CHECK(result.dates[1] == Date{2015, 6, 1});
    CHECK(result.dates[2] == Date{2014, 6, 1});
    CHECK_FALSE(result.short_count);
}

TEST_CASE("similar days are invariant to uniform rescaling of raw features") {
    std::vector<DayFeatures> history, scaled;
    for (int i = 0; i < 8; ++i) {
        const double v = 0.37 * i - 1.0;
        history.push_back(raw_features(date_from_day_of_year_365(2016, 10 + i), v, v + 2.0,
                                       v - 2.0, std::sin(0.7 * i)));
        auto s = history.back();
        s.mean_c *= 3.0;
        s.high_c *= 3.0;
        s.low_c *= 3.0;
        s.season *= 3.0;
        scaled.push_back(s);
    }
    const auto target = raw_features(Date{2017, 1, 20}, 0.2, 2.1, -1.9, 0.4);
    auto target_scaled = target;
    target_scaled.mean_c *= 3.0;
    target_scaled.high_c *= 3.0;
    target_scaled.low_c *= 3.0;
    target_scaled.season *= 3.0;
    const auto a =
        find_similar_days(target, history, FeatureNormalizer::fit(history), 4);
    const auto b =
        find_similar_days(target_scaled, scaled, FeatureNormalizer::fit(scaled), 4);
    REQUIRE(a.dates.size() == b.dates.size());
    for (std::size_t i = 0; i < a.dates.size(); ++i) CHECK(a.dates[i] == b.dates[i]);
}

TEST_CASE("similar days require at least one candidate of the day type") {
    std::vector<DayFeatures> history = {
        raw_features(Date{2016, 1, 4}, 0.5, 0.5, 0.5, 0.5, DayType::workday),
    };
    const auto norm = FeatureNormalizer::fit(history);
    const auto target = raw_features(Date{2017, 1, 7}, 0.5, 0.5, 0.5, 0.5, DayType::holiday);
    CHECK_THROWS_AS(find_similar_days(target, history, norm, 5), std::invalid_argument);
}

TEST_CASE("scenario names") {
    CHECK(std::string(scenario_name(Scenario::high)) == "high");
    CHECK(std::string(scenario_name(Scenario::medium)) == "medium");
    CHECK(std::string(scenario_name(Scenario::low)) == "low");
}
