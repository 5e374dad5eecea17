#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "txrate/calendar.hpp"
#include "txrate/gmm.hpp"
#include "txrate/ingest.hpp"
#include "txrate/load_shape.hpp"
#include "txrate/temperature.hpp"
#include "txrate/thermal.hpp"

namespace txrate {

/// Daily rating: the largest load scaling of the day's shape whose 24 h
/// thermal cycle ages the insulation at exactly the rated pace (F_EQA = 1).
struct RatingSolution {
    double scale = 0.0;       // multiplier applied to the input shape
    double peak_pu = 0.0;     // scale * max(shape)
    double rating_mva = 0.0;  // peak_pu * rated_mva
    double f_eqa = 1.0;
    DayThermalResult thermal;  // simulation at the solution scale
};

/// Bisection on the scale: F_EQA is strictly increasing in it, the lower
/// bracket starts at 0 and the upper doubles from 1 until F_EQA exceeds 1
/// (capped at 16). Throws std::runtime_error if the cap cannot bracket the
/// root or the thermal simulation fails to converge.
RatingSolution daily_rating(const std::array<double, 24>& shape,
                            const std::array<double, 24>& ambient_c, const ThermalParameters& p,
                            double tol = 1e-3, const ThermalOptions& options = {});

/// |R_A - R_E| / R_A averaged over days, as a percentage.
double metric_me(std::span<const double> actual, std::span<const double> estimated);

/// |mean(R_A) - mean(R_E)| / mean(R_A), as a percentage.
double metric_ae(std::span<const double> actual, std::span<const double> estimated);

/// |min(R_A) - min(R_E)| / min(R_A), as a percentage.
double metric_ve(std::span<const double> actual, std::span<const double> estimated);

/// May through September; the rest of the year is winter.
bool is_summer_month(int month);

struct DayRatingRecord {
    int day_index = 0;  // 1..365
    Date source_date;
    bool rated = false;
    double rating_mva = 0.0;
    double peak_pu = 0.0;
    double f_eqa = 0.0;
    int k_star = 0;
    double top_membership = 0.0;
    std::array<double, 24> shape{};  // synthesized per-unit profile
    std::vector<Date> similar_days;
    bool short_similar = false;
    std::string error;  // set when !rated
};

struct AnnualRatingProfile {
    Scenario scenario = Scenario::medium;
    double offset_c = 0.0;
    std::vector<DayRatingRecord> days;  // exactly 365, day-index order

    int unrated_count() const;
};

struct FleetHistory {
    std::vector<HourlyTemperatureDay> weather;  // gap-filled, ascending
    std::vector<TransformerDayObservation> observations;
    HolidayCalendar holidays;
};

struct PipelineOptions {
    int similar_days = 5;
    int k_min = 2;
    int k_max = 10;  // effective ceiling is point count - 1
    double tolerance = 1e-3;
    ThermalOptions thermal{};
    GmmOptions gmm{};
    int parallelism = 1;
};

/// Runs the per-day chain (similar days -> pooled compositions -> mixture
/// fit and cluster-count selection -> membership of the forecast point ->
/// centroid shapes -> synthesized shape -> rating) over all 365 scenario
/// days. Failed days are recorded unrated; throws std::runtime_error if
/// more than 5% of days fail.
AnnualRatingProfile annual_rating_profile(std::span<const LoadComposition> forecast,
                                          const ScenarioProfile& scenario,
                                          const FleetHistory& history,
                                          const ThermalParameters& p, std::uint64_t seed,
                                          const PipelineOptions& options = {});

struct SeasonMetrics {
    double me_pct = 0.0;
    double ae_pct = 0.0;
    double ve_pct = 0.0;
    int days = 0;
};

struct BacktestReport {
    SeasonMetrics winter;  // Oct-Apr
    SeasonMetrics summer;  // May-Sep
};

/// Rates each held-out day directly (its own normalized shape against its
/// own ambient) and compares against the estimated profile per season.
/// Days are matched by day of year; both seasons must end up non-empty.
BacktestReport backtest(std::span<const TransformerDayObservation> actual_days,
                        std::span<const HourlyTemperatureDay> actual_weather,
                        const AnnualRatingProfile& estimated, const ThermalParameters& p,
                        double tol = 1e-3, const ThermalOptions& options = {});

/// One row per rated day: day_index,source_date,rating_mva,peak_pu,f_eqa,
/// k_star,top_membership. Unrated days are left to the run report.
void write_ratings_csv(std::ostream& out, const AnnualRatingProfile& profile);

void write_backtest_csv(std::ostream& out, const BacktestReport& report);

void write_shapes_csv(std::ostream& out, const AnnualRatingProfile& profile);

}  // namespace txrate
