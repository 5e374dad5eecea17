// Acceptance gate: every release-blocking property of the rating engine,
// one pass/fail line each. Takes the CLI binary and a scratch directory:
//
//   acceptance <path-to-txrate> <scratch-dir>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "txrate/gmm.hpp"
#include "txrate/load_shape.hpp"
#include "txrate/rating.hpp"
#include "txrate/synth.hpp"
#include "txrate/temperature.hpp"
#include "txrate/thermal.hpp"

using namespace txrate;
namespace fs = std::filesystem;

namespace {

struct CheckFailure {
    std::string message;
};

void expect(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure{message};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::array<double, 24> flat(double value) {
    std::array<double, 24> a{};
    a.fill(value);
    return a;
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::vector<CompositionPoint> blob(std::mt19937_64& rng, double cx, double cy, double spread,
                                   int count) {
    std::normal_distribution<double> jitter(0.0, spread);
    std::vector<CompositionPoint> points;
    for (int i = 0; i < count; ++i) {
        CompositionPoint p;
        p.r = cx + jitter(rng);
        p.c = cy + jitter(rng);
        points.push_back(p);
    }
    return points;
}

double silhouette_brute(const std::vector<CompositionPoint>& points,
                        const std::vector<int>& labels) {
    const std::size_t n = points.size();
    const int max_label = *std::max_element(labels.begin(), labels.end());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double own_sum = 0.0;
        std::size_t own = 0;
        double best_other = std::numeric_limits<double>::infinity();
        for (int l = 0; l <= max_label; ++l) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[j] != l) continue;
                ++count;
                if (j != i) {
                    sum += std::hypot(points[i].r - points[j].r, points[i].c - points[j].c);
                }
            }
            if (count == 0) continue;
            if (l == labels[i]) {
                own = count;
                own_sum = sum;
            } else {
                best_other = std::min(best_other, sum / static_cast<double>(count));
            }
        }
        if (own <= 1) continue;
        const double a = own_sum / static_cast<double>(own - 1);
        const double denom = std::max(a, best_other);
        total += denom > 0.0 ? (best_other - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

// Paper-literal rating search: raise the peak in 0.001 p.u. steps until the
// daily aging factor reaches 1.
double stepping_oracle(const std::array<double, 24>& shape,
                       const std::array<double, 24>& ambient, const ThermalParameters& p) {
    for (double s = 0.001; s < 16.0; s += 0.001) {
        std::array<double, 24> loads{};
        for (int h = 0; h < 24; ++h) loads[h] = s * shape[h];
        if (simulate_day(p, loads, ambient).f_eqa >= 1.0) return s;
    }
    throw CheckFailure{"stepping oracle never crossed F_EQA = 1"};
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    expect(in.is_open(), "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct FixtureRun {
    SynthDataset data;
    std::array<LoadComposition, 365> forecast;
    AnnualRatingProfile high, medium, low;
    double seconds = 0.0;
};

// One full three-scenario pipeline pass over the bundled synthetic fixture.
FixtureRun run_fixture_pipeline() {
    FixtureRun run;
    run.data = make_synth_dataset({});
    run.forecast.fill(make_composition(0.4, 0.35, 0.25));
    const auto fleet = run.data.fleet();
    const auto params = preset_onaf50();
    const auto start = std::chrono::steady_clock::now();
    const auto high_profile = build_scenario_profile(fleet.weather, Scenario::high, 0.0);
    const auto medium_profile = build_scenario_profile(fleet.weather, Scenario::medium, 0.0);
    const auto low_profile = build_scenario_profile(fleet.weather, Scenario::low, 0.0);
    run.high = annual_rating_profile(run.forecast, high_profile, fleet, params, 42);
    run.medium = annual_rating_profile(run.forecast, medium_profile, fleet, params, 42);
    run.low = annual_rating_profile(run.forecast, low_profile, fleet, params, 42);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

std::vector<double> ratings_of(const AnnualRatingProfile& profile) {
    std::vector<double> out;
    for (const auto& day : profile.days) {
        expect(day.rated, "day " + std::to_string(day.day_index) + " unrated: " + day.error);
        out.push_back(day.rating_mva);
    }
    return out;
}

void criterion_aging_anchors() {
    expect(std::abs(aging_factor(110.0) - 1.0) <= 1e-12,
           "aging_factor(110) = " + fmt(aging_factor(110.0)));
    const double direct_120 = std::exp(15000.0 / 383.0 - 15000.0 / (120.0 + 273.0));
    const double direct_80 = std::exp(15000.0 / 383.0 - 15000.0 / (80.0 + 273.0));
    expect(std::abs(aging_factor(120.0) - direct_120) / direct_120 <= 1e-3,
           "aging_factor(120) = " + fmt(aging_factor(120.0)) + " vs " + fmt(direct_120));
    expect(std::abs(aging_factor(80.0) - direct_80) / direct_80 <= 1e-3,
           "aging_factor(80) = " + fmt(aging_factor(80.0)) + " vs " + fmt(direct_80));
    expect(std::abs(aging_factor(120.0) - 2.7094) / 2.7094 <= 2e-3, "120 degC anchor drifted");
    expect(std::abs(aging_factor(80.0) - 0.0358) / 0.0358 <= 2e-3, "80 degC anchor drifted");
}

void criterion_steady_state() {
    const auto p = preset_onaf50();
    const auto result = simulate_day(p, flat(1.0), flat(30.0));
    expect(result.converged, "steady state did not converge");
    expect(result.passes <= 20, "needed " + std::to_string(result.passes) + " passes");
    for (int h = 0; h < 24; ++h) {
        expect(std::abs(result.hotspot_c[h] - 110.0) <= 0.05,
               "hour " + std::to_string(h) + " hot spot " + fmt(result.hotspot_c[h]));
    }
    expect(std::abs(result.f_eqa - 1.0) <= 1e-3, "F_EQA = " + fmt(result.f_eqa));
    ThermalOptions warm_start;
    warm_start.initial_top_oil_c = 80.0;
    const auto seeded = simulate_day(p, flat(1.0), flat(30.0), warm_start);
    expect(seeded.converged && seeded.passes <= 20, "warm start did not converge in 20 passes");
    for (int h = 0; h < 24; ++h) {
        expect(std::abs(seeded.hotspot_c[h] - result.hotspot_c[h]) <= 0.01,
               "initial guess moved hour " + std::to_string(h) + " by " +
                   fmt(seeded.hotspot_c[h] - result.hotspot_c[h]));
    }
}

void criterion_peak_to_rating() {
    const auto p = preset_onaf50();
    expect(p.rated_mva == 50.0, "preset nameplate changed");
    expect(1.55 * p.rated_mva == 77.5, "1.55 p.u. on 50 MVA must read 77.5 MVA exactly");
    std::array<double, 24> shape{};
    for (int h = 0; h < 24; ++h) shape[h] = 0.6 + 0.4 * std::sin((h - 4) * 0.3);
    const auto normalized = normalize_profile(shape).values;
    const auto solution = daily_rating(normalized, flat(18.0), p);
    expect(solution.rating_mva == solution.peak_pu * p.rated_mva,
           "reported rating is not peak times nameplate");
}

void criterion_solver_oracle() {
    const auto started = std::chrono::steady_clock::now();
    const auto p = preset_onaf50();
    std::mt19937_64 rng(20240816);
    std::uniform_real_distribution<double> level(0.25, 1.0);
    std::uniform_real_distribution<double> base(-15.0, 32.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 24> shape{};
        for (int h = 0; h < 24; ++h) shape[h] = level(rng);
        const auto normalized = normalize_profile(shape).values;
        std::array<double, 24> ambient{};
        const double b = base(rng);
        for (int h = 0; h < 24; ++h) {
            ambient[h] = b + 4.0 * std::sin(2.0 * 3.141592653589793 * (h - 9) / 24.0);
        }
        const auto solution = daily_rating(normalized, ambient, p);
        expect(std::abs(solution.f_eqa - 1.0) <= 1e-3,
               "trial " + std::to_string(trial) + ": F_EQA " + fmt(solution.f_eqa));
        const double oracle = stepping_oracle(normalized, ambient, p);
        expect(std::abs(solution.peak_pu - oracle) <= 0.0011,
               "trial " + std::to_string(trial) + ": bisection " + fmt(solution.peak_pu) +
                   " vs stepping " + fmt(oracle));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    expect(seconds < 10.0, "oracle sweep took " + fmt(seconds) + " s");
}

void criterion_monotonicity(const FixtureRun& run) {
    const auto fleet = run.data.fleet();
    const auto params = preset_onaf50();
    const auto medium = build_scenario_profile(fleet.weather, Scenario::medium, 0.0);
    const auto medium_plus5 = build_scenario_profile(fleet.weather, Scenario::medium, 5.0);
    const auto base = annual_rating_profile(run.forecast, medium, fleet, params, 42);
    const auto hotter = annual_rating_profile(run.forecast, medium_plus5, fleet, params, 42);
    const auto base_r = ratings_of(base);
    const auto hot_r = ratings_of(hotter);
    for (int d = 0; d < 365; ++d) {
        expect(hot_r[d] < base_r[d],
               "day " + std::to_string(d + 1) + ": +5 degC did not lower the rating (" +
                   fmt(base_r[d]) + " -> " + fmt(hot_r[d]) + ")");
    }
    const auto high_r = ratings_of(run.high);
    const auto medium_r = ratings_of(run.medium);
    const auto low_r = ratings_of(run.low);
    for (int d = 0; d < 365; ++d) {
        expect(high_r[d] <= medium_r[d] && medium_r[d] <= low_r[d],
               "day " + std::to_string(d + 1) + ": scenario ordering violated");
    }
    // ambient additivity on an arbitrary fixture day
    const auto& ambient = medium.temps[200];
    auto shifted = ambient;
    for (double& t : shifted) t += 3.7;
    std::array<double, 24> loads{};
    for (int h = 0; h < 24; ++h) loads[h] = 0.5 + 0.45 * std::sin(h * 0.3);
    const auto a = simulate_day(params, loads, ambient);
    const auto b = simulate_day(params, loads, shifted);
    for (int h = 0; h < 24; ++h) {
        expect(std::abs((b.hotspot_c[h] - a.hotspot_c[h]) - 3.7) <= 1e-9,
               "hot-spot shift != ambient shift at hour " + std::to_string(h));
    }
}

void criterion_seasonal(const FixtureRun& run) {
    for (const auto* profile : {&run.high, &run.medium, &run.low}) {
        std::vector<double> summer, winter;
        for (const auto& day : profile->days) {
            expect(day.rated, "unrated day in scenario run");
            const Date date = date_from_day_of_year_365(2001, day.day_index);
            (is_summer_month(date.month) ? summer : winter).push_back(day.rating_mva);
        }
        expect(!summer.empty() && !winter.empty(), "season split came up empty");
        expect(mean_of(summer) < mean_of(winter),
               std::string(scenario_name(profile->scenario)) + ": summer mean " +
                   fmt(mean_of(summer)) + " not below winter mean " + fmt(mean_of(winter)));
    }
    expect(run.seconds < 60.0,
           "three-scenario pipeline took " + fmt(run.seconds) + " s");
}

void criterion_gmm_properties() {
    // responsibilities sum to 1
    std::mt19937_64 rng(404);
    auto points = blob(rng, 0.2, 0.25, 0.04, 30);
    for (const auto& p : blob(rng, 0.75, 0.7, 0.04, 30)) points.push_back(p);
    const auto model = fit_gmm(points, 2, 11);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    for (int i = 0; i < 1000; ++i) {
        CompositionPoint q;
        q.r = u(rng);
        q.c = u(rng);
        const auto m = membership(model, q);
        double sum = 0.0;
        for (double v : m.probabilities) sum += v;
        expect(std::abs(sum - 1.0) <= 1e-9, "membership sum " + fmt(sum));
    }
    // monotone log-likelihood across 100 seeded fits
    GmmOptions single;
    single.n_init = 1;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 data_rng(seed * 977);
        auto cloud = blob(data_rng, 0.3, 0.3, 0.1, 20);
        for (const auto& p : blob(data_rng, 0.7, 0.6, 0.1, 20)) cloud.push_back(p);
        std::vector<std::vector<double>> trace;
        single.ll_trace = &trace;
        fit_gmm(cloud, 3, seed, single);
        for (const auto& sequence : trace) {
            for (std::size_t i = 1; i < sequence.size(); ++i) {
                expect(sequence[i] >= sequence[i - 1] - 1e-9,
                       "log-likelihood fell at seed " + std::to_string(seed));
            }
        }
    }
    // blob recovery and cluster-count selection
    std::mt19937_64 fix(777);
    auto two = blob(fix, 0.15, 0.2, 0.02, 25);
    for (const auto& p : blob(fix, 0.8, 0.75, 0.02, 25)) two.push_back(p);
    const auto fitted = fit_gmm(two, 2, 5);
    auto comps = fitted.components;
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.mean.x < b.mean.x; });
    expect(std::abs(comps[0].mean.x - 0.15) <= 0.02 && std::abs(comps[0].mean.y - 0.2) <= 0.02,
           "first blob mean off: " + fmt(comps[0].mean.x) + "," + fmt(comps[0].mean.y));
    expect(std::abs(comps[1].mean.x - 0.8) <= 0.02 && std::abs(comps[1].mean.y - 0.75) <= 0.02,
           "second blob mean off: " + fmt(comps[1].mean.x) + "," + fmt(comps[1].mean.y));
    expect(select_k(two, 2, 6, 17).k_star == 2, "two blobs did not select k = 2");
    auto three = blob(fix, 0.1, 0.1, 0.03, 20);
    for (const auto& p : blob(fix, 0.9, 0.15, 0.03, 20)) three.push_back(p);
    for (const auto& p : blob(fix, 0.5, 0.9, 0.03, 20)) three.push_back(p);
    expect(select_k(three, 2, 6, 29).k_star == 3, "three blobs did not select k = 3");
}

void criterion_silhouette() {
    std::vector<CompositionPoint> points(4);
    points[0].r = 0.0;
    points[1].r = 0.1;
    points[2].r = 10.0;
    points[3].r = 10.1;
    const std::vector<int> labels = {0, 0, 1, 1};
    const double avg = silhouette_avg(points, labels);
    const double brute = silhouette_brute(points, labels);
    expect(std::abs(avg - brute) <= 1e-6,
           "library " + fmt(avg) + " vs brute force " + fmt(brute));
    expect(std::abs(avg - 0.98995) <= 1e-4, "four-point example drifted: " + fmt(avg));
    // fuzzed range
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<CompositionPoint> cloud;
        std::vector<int> cloud_labels;
        const int n = 4 + static_cast<int>(rng() % 30);
        for (int i = 0; i < n; ++i) {
            CompositionPoint p;
            p.r = u(rng);
            p.c = u(rng);
            cloud.push_back(p);
            cloud_labels.push_back(static_cast<int>(rng() % 3));
        }
        cloud_labels[0] = 0;
        cloud_labels[1] = 1;  // keep two clusters occupied
        const double q = silhouette_avg(cloud, cloud_labels);
        expect(q >= -1.0 && q <= 1.0, "Q_avg outside [-1,1]: " + fmt(q));
        expect(std::abs(q - silhouette_brute(cloud, cloud_labels)) <= 1e-9,
               "fuzzed silhouette mismatch");
    }
    // singleton convention
    std::vector<CompositionPoint> trio(3);
    trio[0].r = 0.0;
    trio[1].r = 0.1;
    trio[2].r = 5.0;
    const std::vector<int> trio_labels = {0, 0, 1};
    const double q_a = (5.0 - 0.1) / 5.0;
    const double q_b = (4.9 - 0.1) / 4.9;
    expect(std::abs(silhouette_avg(trio, trio_labels) - (q_a + q_b) / 3.0) <= 1e-12,
           "singleton cluster must contribute exactly 0");
}

void criterion_metrics() {
    const std::vector<double> actual = {100.0, 100.0};
    const std::vector<double> estimated = {90.0, 110.0};
    expect(metric_me(actual, estimated) == 10.0, "ME hand example");
    expect(metric_ae(actual, estimated) == 0.0, "AE hand example");
    expect(metric_ve(actual, estimated) == 10.0, "VE hand example");
    const std::vector<double> same = {61.0, 58.0, 70.0};
    expect(metric_me(same, same) == 0.0 && metric_ae(same, same) == 0.0 &&
               metric_ve(same, same) == 0.0,
           "metrics must vanish on identical sequences");

    // Self-consistent backtest: every transformer shares one exactly
    // representable shape, so the estimate reproduces the held-out year
    // bit for bit and all six error numbers are exactly zero.
    SynthOptions options;
    options.identical_shapes = true;
    options.transformers = 4;
    const auto data = make_synth_dataset(options);
    FleetHistory history;
    history.holidays = data.holidays;
    std::vector<HourlyTemperatureDay> target_weather;
    for (const auto& day : data.weather) {
        (day.date.year == 2017 ? target_weather : history.weather).push_back(day);
    }
    std::vector<TransformerDayObservation> actual_days;
    for (const auto& obs : data.observations) {
        if (obs.date.year == 2017) {
            if (obs.transformer_id == "T01") actual_days.push_back(obs);
        } else {
            history.observations.push_back(obs);
        }
    }
    std::array<LoadComposition, 365> forecast;
    for (const auto& obs : actual_days) forecast[day_of_year_365(obs.date) - 1] = obs.composition;
    const auto pseudo = build_scenario_profile(target_weather, Scenario::medium, 0.0);
    const auto params = preset_onaf50();
    const auto annual = annual_rating_profile(forecast, pseudo, history, params, 42);
    const auto report = backtest(actual_days, target_weather, annual, params);
    expect(report.winter.me_pct == 0.0 && report.winter.ae_pct == 0.0 &&
               report.winter.ve_pct == 0.0,
           "winter backtest not exactly zero: ME " + fmt(report.winter.me_pct) + " AE " +
               fmt(report.winter.ae_pct) + " VE " + fmt(report.winter.ve_pct));
    expect(report.summer.me_pct == 0.0 && report.summer.ae_pct == 0.0 &&
               report.summer.ve_pct == 0.0,
           "summer backtest not exactly zero: ME " + fmt(report.summer.me_pct) + " AE " +
               fmt(report.summer.ae_pct) + " VE " + fmt(report.summer.ve_pct));
}

void criterion_temperature_profiles() {
    const std::vector<int> years = {2013, 2014, 2015};
    const auto weather = make_dominant_year_weather(years, 2014, 5);
    const auto high = build_scenario_profile(weather, Scenario::high, 0.0);
    for (int d = 0; d < 365; ++d) {
        expect(high.source_dates[d].year == 2014,
               "day " + std::to_string(d + 1) + " not sourced from the dominant year");
    }
    // verbatim reproduction of the dominant year
    for (const auto& day : weather) {
        if (day.date.year != 2014) continue;
        const int d = day_of_year_365(day.date) - 1;
        for (int h = 0; h < 24; ++h) {
            expect(high.temps[d][h] == day.temps[h], "dominant year not copied verbatim");
        }
    }
    const auto medium = build_scenario_profile(weather, Scenario::medium, 0.0);
    const auto low = build_scenario_profile(weather, Scenario::low, 0.0);
    for (int d = 0; d < 365; ++d) {
        double h_mean = 0.0, m_mean = 0.0, l_mean = 0.0;
        for (int h = 0; h < 24; ++h) {
            h_mean += high.temps[d][h];
            m_mean += medium.temps[d][h];
            l_mean += low.temps[d][h];
        }
        expect(h_mean >= m_mean && m_mean >= l_mean,
               "daily-mean dominance violated on day " + std::to_string(d + 1));
    }
    const auto shifted = build_scenario_profile(weather, Scenario::high, 1.0);
    for (int d = 0; d < 365; ++d) {
        for (int h = 0; h < 24; ++h) {
            expect(shifted.temps[d][h] == high.temps[d][h] + 1.0,
                   "offset of 1 degC must shift every hour by exactly 1.0");
        }
    }
}

void criterion_cli_determinism(const std::string& cli, const fs::path& scratch) {
    const fs::path fixture = scratch / "fixture";
    const fs::path out1 = scratch / "out1";
    const fs::path out2 = scratch / "out2";
    fs::remove_all(fixture);
    fs::remove_all(out1);
    fs::remove_all(out2);
    const auto run = [&](const std::string& command) {
        expect(std::system(command.c_str()) == 0, "command failed: " + command);
    };
    run("'" + cli + "' gen-fixture --out-dir '" + fixture.string() + "' --seed 42 > /dev/null");
    const std::string config = (fixture / "config.ini").string();
    run("'" + cli + "' rate-year --config '" + config + "' --out-dir '" + out1.string() +
        "' > /dev/null 2>&1");
    run("'" + cli + "' rate-year --config '" + config + "' --out-dir '" + out2.string() +
        "' > /dev/null 2>&1");
    for (const char* scenario : {"high", "medium", "low"}) {
        for (const char* prefix : {"ratings_", "shapes_"}) {
            const std::string name = std::string(prefix) + scenario + ".csv";
            const auto a = read_file(out1 / name);
            const auto b = read_file(out2 / name);
            expect(!a.empty(), name + " is empty");
            expect(a == b, name + " differs between identically configured runs");
        }
    }
}

void criterion_composition_ordering(const FixtureRun& run) {
    const auto fleet = run.data.fleet();
    const auto params = preset_onaf50();
    std::array<LoadComposition, 365> res_heavy;
    res_heavy.fill(make_composition(0.78, 0.12, 0.10));
    std::array<LoadComposition, 365> ind_heavy;
    ind_heavy.fill(make_composition(0.10, 0.12, 0.78));
    for (Scenario sc : {Scenario::high, Scenario::medium, Scenario::low}) {
        const auto profile = build_scenario_profile(fleet.weather, sc, 0.0);
        const auto res = annual_rating_profile(res_heavy, profile, fleet, params, 42);
        const auto ind = annual_rating_profile(ind_heavy, profile, fleet, params, 42);
        const double res_mean = mean_of(ratings_of(res));
        const double ind_mean = mean_of(ratings_of(ind));
        expect(res_mean > ind_mean,
               std::string(scenario_name(sc)) + ": residential-heavy mean " + fmt(res_mean) +
                   " not above industrial-heavy mean " + fmt(ind_mean));
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <txrate-binary> <scratch-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path scratch = argv[2];
    fs::create_directories(scratch);

    // The fixture pipeline feeds criteria 5, 6 and 12.
    FixtureRun fixture_run;
    std::string fixture_error;
    try {
        fixture_run = run_fixture_pipeline();
    } catch (const std::exception& e) {
        fixture_error = e.what();
    } catch (const CheckFailure& f) {
        fixture_error = f.message;
    }

    struct Criterion {
        int number;
        const char* title;
        std::function<void()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "aging-factor anchors at 110/120/80 degC", criterion_aging_anchors},
        {2, "steady state: rated load at 30 degC holds 110 degC and unit aging",
         criterion_steady_state},
        {3, "rating readout is peak times nameplate (1.55 p.u. on 50 MVA = 77.5 MVA)",
         criterion_peak_to_rating},
        {4, "bisection matches the 0.001 p.u. stepping search on 50 random days",
         criterion_solver_oracle},
        {5, "monotonicity: +5 degC lowers ratings; high <= medium <= low; exact additivity",
         [&] {
             expect(fixture_error.empty(), "fixture pipeline failed: " + fixture_error);
             criterion_monotonicity(fixture_run);
         }},
        {6, "seasonal pattern: summer mean below winter mean in every scenario, under 60 s",
         [&] {
             expect(fixture_error.empty(), "fixture pipeline failed: " + fixture_error);
             criterion_seasonal(fixture_run);
         }},
        {7, "mixture properties: membership sums, monotone EM, blob recovery, k selection",
         criterion_gmm_properties},
        {8, "silhouette: four-point example, fuzzed range, singleton convention",
         criterion_silhouette},
        {9, "error metrics: hand examples exact, self-consistent backtest all zero",
         criterion_metrics},
        {10, "temperature scenarios: dominant year verbatim, dominance, exact offset",
         criterion_temperature_profiles},
        {11, "identically configured rate-year runs emit byte-identical CSVs",
         [&] { criterion_cli_determinism(cli, scratch); }},
        {12, "residential-heavy forecasts rate above industrial-heavy in every scenario",
         [&] {
             expect(fixture_error.empty(), "fixture pipeline failed: " + fixture_error);
             criterion_composition_ordering(fixture_run);
         }},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string failure;
        try {
            criterion.check();
        } catch (const CheckFailure& f) {
            failure = f.message;
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (failure.empty()) {
            std::cout << "criterion " << criterion.number << " PASS  " << criterion.title
                      << "\n";
        } else {
            ++failures;
            std::cout << "criterion " << criterion.number << " FAIL  " << criterion.title
                      << "  [" << failure << "]\n";
        }
    }
    if (failures != 0) {
        std::cout << failures << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
