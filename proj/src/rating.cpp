#include "txrate/rating.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "txrate/csv.hpp"

namespace txrate {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void append_bits(std::string& out, double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    out.append(reinterpret_cast<const char*>(&bits), sizeof bits);
}

double simulate_scaled(const std::array<double, 24>& shape, double scale,
                       const std::array<double, 24>& ambient_c, const ThermalParameters& p,
                       const ThermalOptions& options, DayThermalResult* out) {
    std::array<double, 24> scaled;
    for (int h = 0; h < 24; ++h) scaled[h] = scale * shape[h];
    DayThermalResult result = simulate_day(p, scaled, ambient_c, options);
    if (!result.converged) {
        throw std::runtime_error("thermal simulation did not converge (residual " +
                                 format_double(result.residual_c) + " degC)");
    }
    if (out) *out = std::move(result);
    return out ? out->f_eqa : result.f_eqa;
}

}  // namespace

RatingSolution daily_rating(const std::array<double, 24>& shape,
                            const std::array<double, 24>& ambient_c, const ThermalParameters& p,
                            double tol, const ThermalOptions& options) {
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("daily_rating: tolerance must be positive");
    const double shape_max = *std::max_element(shape.begin(), shape.end());
    if (!(shape_max > 0.0)) throw std::invalid_argument("daily_rating: shape has no positive hour");

    constexpr double kScaleCap = 16.0;
    constexpr double kBracketWidth = 1e-5;

    double lo = 0.0;
    double hi = 1.0;
    double f_hi = simulate_scaled(shape, hi, ambient_c, p, options, nullptr);
    while (f_hi <= 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > kScaleCap) {
            throw std::runtime_error(
                "daily_rating: aging stays below rated pace even at 16 p.u.");
        }
        f_hi = simulate_scaled(shape, hi, ambient_c, p, options, nullptr);
    }

    RatingSolution sol;
    double mid = hi;
    double f_mid = f_hi;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        f_mid = simulate_scaled(shape, mid, ambient_c, p, options, &sol.thermal);
        if (hi - lo <= kBracketWidth && std::abs(f_mid - 1.0) <= tol) break;
        if (f_mid > 1.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (std::abs(f_mid - 1.0) > tol) {
        throw std::runtime_error("daily_rating: bisection failed to meet the aging tolerance");
    }
    sol.scale = mid;
    sol.f_eqa = f_mid;
    sol.peak_pu = mid * shape_max;
    sol.rating_mva = sol.peak_pu * p.rated_mva;
    return sol;
}

namespace {

void check_metric_inputs(std::span<const double> actual, std::span<const double> estimated) {
    if (actual.size() != estimated.size()) {
        throw std::invalid_argument("metric: sequence lengths differ");
    }
    if (actual.empty()) throw std::invalid_argument("metric: empty sequences");
    for (double a : actual) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("metric: actual values must be positive");
        }
    }
    for (double e : estimated) {
        if (!std::isfinite(e)) throw std::invalid_argument("metric: estimated values must be finite");
    }
}

}  // namespace

double metric_me(std::span<const double> actual, std::span<const double> estimated) {
    check_metric_inputs(actual, estimated);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        sum += std::abs(actual[i] - estimated[i]) / actual[i];
    }
    return 100.0 * sum / static_cast<double>(actual.size());
}

double metric_ae(std::span<const double> actual, std::span<const double> estimated) {
    check_metric_inputs(actual, estimated);
    double mean_a = 0.0;
    double mean_e = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        mean_a += actual[i];
        mean_e += estimated[i];
    }
    return 100.0 * std::abs(mean_a - mean_e) / mean_a;
}

double metric_ve(std::span<const double> actual, std::span<const double> estimated) {
    check_metric_inputs(actual, estimated);
    const double min_a = *std::min_element(actual.begin(), actual.end());
    const double min_e = *std::min_element(estimated.begin(), estimated.end());
    return 100.0 * std::abs(min_a - min_e) / min_a;
}

bool is_summer_month(int month) { return month >= 5 && month <= 9; }

int AnnualRatingProfile::unrated_count() const {
    int n = 0;
    for (const auto& day : days) n += day.rated ? 0 : 1;
    return n;
}

namespace {

struct MinMax2 {
    double min_r = 0.0, max_r = 0.0, min_c = 0.0, max_c = 0.0;

    double norm_r(double v) const {
        const double span = max_r - min_r;
        return span > 0.0 ? (v - min_r) / span : 0.0;
    }
    double norm_c(double v) const {
        const double span = max_c - min_c;
        return span > 0.0 ? (v - min_c) / span : 0.0;
    }
};

/// Mixture fit shared by days whose clustering population and forecast
/// point coincide; memberships are aligned to the canonical point order.
struct EmOutcome {
    GmmModel model;
    Membership future;
    std::vector<Membership> point_memberships;
};

struct PipelineContext {
    const ScenarioProfile& scenario;
    const FleetHistory& history;
    const ThermalParameters& params;
    std::span<const LoadComposition> forecast;
    const PipelineOptions& options;
    std::uint64_t seed;
    std::vector<DayFeatures> history_features;
    std::map<Date, std::vector<const TransformerDayObservation*>> obs_by_date;
    std::map<std::string, EmOutcome> em_memo;
    std::mutex memo_mutex;
};

DayRatingRecord rate_one_day(PipelineContext& ctx, int d) {
    DayRatingRecord record;
    record.day_index = d;
    record.source_date = ctx.scenario.source_dates[d - 1];
    const auto& ambient = ctx.scenario.temps[d - 1];

    DayFeatures target;
    target.date = record.source_date;
    target.day_type = classify_day(record.source_date, ctx.history.holidays);
    double sum = 0.0, high = ambient[0], low = ambient[0];
    for (double t : ambient) {
        sum += t;
        high = std::max(high, t);
        low = std::min(low, t);
    }
    target.mean_c = sum / 24.0;
    target.high_c = high;
    target.low_c = low;
    target.season = std::sin(2.0 * std::numbers::pi * d / 365.0);

    std::vector<DayFeatures> corpus = ctx.history_features;
    corpus.push_back(target);
    const FeatureNormalizer normalizer = FeatureNormalizer::fit(corpus);
    const SimilarDaysResult similar =
        find_similar_days(target, ctx.history_features, normalizer, ctx.options.similar_days);
    record.similar_days = similar.dates;
    record.short_similar = similar.short_count;

    std::vector<const TransformerDayObservation*> pool;
    for (const Date& date : similar.dates) {
        const auto it = ctx.obs_by_date.find(date);
        if (it == ctx.obs_by_date.end()) continue;
        pool.insert(pool.end(), it->second.begin(), it->second.end());
    }
    if (pool.empty()) {
        throw std::runtime_error("no transformer observations on the similar days");
    }
    std::sort(pool.begin(), pool.end(),
              [](const TransformerDayObservation* a, const TransformerDayObservation* b) {
                  if (a->composition.r != b->composition.r) {
                      return a->composition.r < b->composition.r;
                  }
                  if (a->composition.c != b->composition.c) {
                      return a->composition.c < b->composition.c;
                  }
                  if (a->transformer_id != b->transformer_id) {
                      return a->transformer_id < b->transformer_id;
                  }
                  return a->date < b->date;
              });

    const LoadComposition& fc = ctx.forecast[d - 1];
    MinMax2 mm{fc.r, fc.r, fc.c, fc.c};
    for (const auto* obs : pool) {
        mm.min_r = std::min(mm.min_r, obs->composition.r);
        mm.max_r = std::max(mm.max_r, obs->composition.r);
        mm.min_c = std::min(mm.min_c, obs->composition.c);
        mm.max_c = std::max(mm.max_c, obs->composition.c);
    }
    std::vector<CompositionPoint> points;
    points.reserve(pool.size());
    for (const auto* obs : pool) {
        points.push_back({mm.norm_r(obs->composition.r), mm.norm_c(obs->composition.c),
                          obs->transformer_id, obs->date, false});
    }
    CompositionPoint future{mm.norm_r(fc.r), mm.norm_c(fc.c), "", {}, true};

    std::string key;
    key.reserve(16 * points.size() + 24);
    append_bits(key, static_cast<double>(points.size()));
    for (const auto& pt : points) {
        append_bits(key, pt.r);
        append_bits(key, pt.c);
    }
    append_bits(key, future.r);
    append_bits(key, future.c);

    EmOutcome outcome;
    bool have_outcome = false;
    {
        std::lock_guard<std::mutex> lock(ctx.memo_mutex);
        const auto it = ctx.em_memo.find(key);
        if (it != ctx.em_memo.end()) {
            outcome = it->second;
            have_outcome = true;
        }
    }
    if (!have_outcome) {
        const std::uint64_t day_seed = splitmix64(ctx.seed ^ fnv1a(key));
        int distinct = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            bool seen = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (points[j].r == points[i].r && points[j].c == points[i].c) {
                    seen = true;
                    break;
                }
            }
            distinct += seen ? 0 : 1;
        }
        const int k_lo = std::max(2, ctx.options.k_min);
        const int k_hi = std::min({ctx.options.k_max, distinct,
                                   static_cast<int>(points.size()) - 1});
        if (k_hi >= k_lo) {
            try {
                outcome.model = select_k(points, k_lo, k_hi, day_seed, ctx.options.gmm).model;
                have_outcome = true;
            } catch (const DegenerateFitError&) {
            }
        }
        if (!have_outcome) {
            outcome.model = fit_gmm(points, 1, day_seed, ctx.options.gmm);
        }
        outcome.future = membership(outcome.model, future);
        outcome.point_memberships.reserve(points.size());
        for (const auto& pt : points) {
            outcome.point_memberships.push_back(membership(outcome.model, pt));
        }
        std::lock_guard<std::mutex> lock(ctx.memo_mutex);
        ctx.em_memo.emplace(key, outcome);
    }

    std::vector<NormalizedLoadShape> shapes;
    shapes.reserve(pool.size());
    for (const auto* obs : pool) shapes.push_back(normalize_profile(obs->loads));
    const CentroidProfilesResult centroids =
        centroid_profiles(shapes, outcome.point_memberships, outcome.model.k());
    if (centroids.profiles.empty()) {
        throw std::runtime_error("every cluster lost its responsibility mass");
    }
    record.shape = construct_load_shape(outcome.future, centroids.profiles);
    record.k_star = outcome.model.k();
    record.top_membership =
        *std::max_element(outcome.future.probabilities.begin(), outcome.future.probabilities.end());

    const RatingSolution sol = daily_rating(record.shape, ambient, ctx.params,
                                            ctx.options.tolerance, ctx.options.thermal);
    record.rating_mva = sol.rating_mva;
    record.peak_pu = sol.peak_pu;
    record.f_eqa = sol.f_eqa;
    record.rated = true;
    return record;
}

}  // namespace

AnnualRatingProfile annual_rating_profile(std::span<const LoadComposition> forecast,
                                          const ScenarioProfile& scenario,
                                          const FleetHistory& history,
                                          const ThermalParameters& p, std::uint64_t seed,
                                          const PipelineOptions& options) {
    if (forecast.size() != 365) {
        throw std::invalid_argument("forecast must cover exactly 365 days");
    }
    if (history.weather.empty() || history.observations.empty()) {
        throw std::invalid_argument("fleet history must contain weather and observations");
    }
    p.validate();

    PipelineContext ctx{scenario, history, p, forecast, options, seed, {}, {}, {}, {}};
    ctx.history_features.reserve(history.weather.size());
    for (const auto& day : history.weather) {
        ctx.history_features.push_back(
            compute_day_features(day, classify_day(day.date, history.holidays)));
    }
    for (const auto& obs : history.observations) ctx.obs_by_date[obs.date].push_back(&obs);

    AnnualRatingProfile profile;
    profile.scenario = scenario.scenario;
    profile.offset_c = scenario.offset_c;
    profile.days.resize(365);

    const auto run_day = [&](int d) {
        try {
            profile.days[d - 1] = rate_one_day(ctx, d);
        } catch (const std::exception& e) {
            profile.days[d - 1].day_index = d;
            profile.days[d - 1].source_date = scenario.source_dates[d - 1];
            profile.days[d - 1].rated = false;
            profile.days[d - 1].error = e.what();
        }
    };

    const int workers = std::max(1, options.parallelism);
    if (workers == 1) {
        for (int d = 1; d <= 365; ++d) run_day(d);
    } else {
        std::atomic<int> next{1};
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&] {
                for (int d = next.fetch_add(1); d <= 365; d = next.fetch_add(1)) run_day(d);
            });
        }
        for (auto& t : threads) t.join();
    }

    const int unrated = profile.unrated_count();
    if (unrated * 20 > 365) {
        std::ostringstream os;
        os << unrated << " of 365 days failed to rate; first error: ";
        for (const auto& day : profile.days) {
            if (!day.rated) {
                os << "day " << day.day_index << ": " << day.error;
                break;
            }
        }
        throw std::runtime_error(os.str());
    }
    return profile;
}

BacktestReport backtest(std::span<const TransformerDayObservation> actual_days,
                        std::span<const HourlyTemperatureDay> actual_weather,
                        const AnnualRatingProfile& estimated, const ThermalParameters& p,
                        double tol, const ThermalOptions& options) {
    std::map<Date, const HourlyTemperatureDay*> weather_by_date;
    for (const auto& day : actual_weather) weather_by_date[day.date] = &day;

    std::vector<double> actual_summer, est_summer, actual_winter, est_winter;
    for (const auto& obs : actual_days) {
        const int d = day_of_year_365(obs.date);
        const DayRatingRecord& est = estimated.days.at(d - 1);
        if (!est.rated) continue;
        const auto weather = weather_by_date.find(obs.date);
        if (weather == weather_by_date.end()) {
            throw std::invalid_argument("no weather for actual day " + format_date(obs.date));
        }
        const NormalizedLoadShape shape = normalize_profile(obs.loads);
        const RatingSolution sol =
            daily_rating(shape.values, weather->second->temps, p, tol, options);
        if (is_summer_month(obs.date.month)) {
            actual_summer.push_back(sol.rating_mva);
            est_summer.push_back(est.rating_mva);
        } else {
            actual_winter.push_back(sol.rating_mva);
            est_winter.push_back(est.rating_mva);
        }
    }
    if (actual_summer.empty() || actual_winter.empty()) {
        throw std::runtime_error("backtest needs comparable days in both seasons");
    }
    BacktestReport report;
    report.summer = {metric_me(actual_summer, est_summer), metric_ae(actual_summer, est_summer),
                     metric_ve(actual_summer, est_summer),
                     static_cast<int>(actual_summer.size())};
    report.winter = {metric_me(actual_winter, est_winter), metric_ae(actual_winter, est_winter),
                     metric_ve(actual_winter, est_winter),
                     static_cast<int>(actual_winter.size())};
    return report;
}

void write_ratings_csv(std::ostream& out, const AnnualRatingProfile& profile) {
    out << "day_index,source_date,rating_mva,peak_pu,f_eqa,k_star,top_membership\n";
    for (const auto& day : profile.days) {
        if (!day.rated) continue;
        out << day.day_index << ',' << format_date(day.source_date) << ','
            << format_double(day.rating_mva) << ',' << format_double(day.peak_pu) << ','
            << format_double(day.f_eqa) << ',' << day.k_star << ','
            << format_double(day.top_membership) << '\n';
    }
}

void write_backtest_csv(std::ostream& out, const BacktestReport& report) {
    out << "season,me_pct,ae_pct,ve_pct\n";
    out << "winter," << format_double(report.winter.me_pct) << ','
        << format_double(report.winter.ae_pct) << ',' << format_double(report.winter.ve_pct)
        << '\n';
    out << "summer," << format_double(report.summer.me_pct) << ','
        << format_double(report.summer.ae_pct) << ',' << format_double(report.summer.ve_pct)
        << '\n';
}

void write_shapes_csv(std::ostream& out, const AnnualRatingProfile& profile) {
    out << "day_index,hour,load_pu\n";
    for (const auto& day : profile.days) {
        if (!day.rated) continue;
        for (int h = 0; h < 24; ++h) {
            out << day.day_index << ',' << h << ',' << format_double(day.shape[h]) << '\n';
        }
    }
}

}  // namespace txrate
