// txrate: annual continuous dynamic transformer rating estimation.
//
// Pipeline per temperature scenario: build a 365-day ambient profile from
// weather history, retrieve the 5 most similar historical days for each
// profile day, cluster the pooled transformer-day compositions with a
// Gaussian mixture, synthesize the forecast transformer's 24 h load shape
// from its cluster memberships, and scale that shape until the daily
// insulation aging factor reaches exactly 1.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "txrate/calendar.hpp"
#include "txrate/csv.hpp"
#include "txrate/ingest.hpp"
#include "txrate/rating.hpp"
#include "txrate/svg_plot.hpp"
#include "txrate/synth.hpp"
#include "txrate/temperature.hpp"
#include "txrate/thermal.hpp"

namespace fs = std::filesystem;
using namespace txrate;

namespace {

struct CommonArgs {
    std::string weather_path;
    std::string loads_path;
    std::string compositions_path;
    std::string holidays_path;
    std::string thermal_path;
    std::string preset = "onaf50";
    std::string forecast_path;
    std::string out_dir = ".";
    std::string scenario = "all";
    std::uint64_t seed = 42;
    double offset_c = 0.0;
    double tolerance = 1e-3;
    int k_min = 2;
    int k_max = 10;
    int similar_days = 5;
    int max_gap_hours = 3;
    int parallelism = 1;
};

struct RunReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;

    void write(const fs::path& path) const {
        std::ofstream out(path);
        out << "errors: " << errors.size() << "\n";
        for (const auto& e : errors) out << "ERROR " << e << "\n";
        for (const auto& w : warnings) out << "WARNING " << w << "\n";
        for (const auto& n : notes) out << "NOTE " << n << "\n";
    }
};

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw std::runtime_error(std::string("cannot open ") + what + " file: " + path);
    }
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    return out;
}

ThermalParameters load_thermal(const CommonArgs& args) {
    if (!args.thermal_path.empty()) {
        auto in = open_input(args.thermal_path, "thermal parameters");
        return parse_thermal_params(in);
    }
    if (args.preset == "onaf50") return preset_onaf50();
    throw std::runtime_error("unknown thermal preset: " + args.preset);
}

std::vector<HourlyTemperatureDay> load_weather(const CommonArgs& args, RunReport& report) {
    auto in = open_input(args.weather_path, "weather");
    GapFillResult filled = fill_gaps(parse_weather_csv(in), args.max_gap_hours);
    for (const auto& removed : filled.removed) {
        std::ostringstream os;
        os << "weather day " << format_date(removed.date) << " dropped ("
           << removed.longest_gap_hours << " h gap exceeds " << args.max_gap_hours << " h)";
        report.warnings.push_back(os.str());
    }
    if (filled.days.empty()) throw std::runtime_error("weather history is empty");
    return filled.days;
}

FleetHistory load_fleet(const CommonArgs& args, RunReport& report) {
    FleetHistory fleet;
    fleet.weather = load_weather(args, report);
    auto loads_in = open_input(args.loads_path, "loads");
    auto comps_in = open_input(args.compositions_path, "compositions");
    TransformerParseResult parsed = parse_transformer_csv(loads_in, comps_in);
    for (const auto& skipped : parsed.skipped) {
        report.warnings.push_back("load day skipped: " + skipped);
    }
    fleet.observations = std::move(parsed.observations);
    if (fleet.observations.empty()) throw std::runtime_error("no usable transformer-day records");
    if (!args.holidays_path.empty()) {
        auto holidays_in = open_input(args.holidays_path, "holidays");
        fleet.holidays = parse_holiday_file(holidays_in);
    }
    return fleet;
}

std::array<LoadComposition, 365> load_forecast(const CommonArgs& args) {
    if (args.forecast_path.empty()) {
        throw std::runtime_error("a forecast composition file is required (--forecast)");
    }
    auto in = open_input(args.forecast_path, "forecast");
    return parse_forecast_csv(in);
}

std::vector<Scenario> selected_scenarios(const std::string& name) {
    if (name == "all") return {Scenario::high, Scenario::medium, Scenario::low};
    if (name == "high") return {Scenario::high};
    if (name == "medium") return {Scenario::medium};
    if (name == "low") return {Scenario::low};
    throw std::runtime_error("unknown scenario: " + name + " (want high|medium|low|all)");
}

int year_count(const std::vector<HourlyTemperatureDay>& weather) {
    std::vector<int> years;
    for (const auto& day : weather) {
        if (years.empty() || years.back() != day.date.year) years.push_back(day.date.year);
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    return static_cast<int>(years.size());
}

PipelineOptions pipeline_options(const CommonArgs& args) {
    PipelineOptions opts;
    opts.similar_days = args.similar_days;
    opts.k_min = args.k_min;
    opts.k_max = args.k_max;
    opts.tolerance = args.tolerance;
    opts.parallelism = args.parallelism;
    return opts;
}

int cmd_build_temps(const CommonArgs& args) {
    RunReport report;
    fs::create_directories(args.out_dir);
    int status = 0;
    try {
        const auto weather = load_weather(args, report);
        if (year_count(weather) < 2) {
            report.warnings.push_back(
                "weather history spans a single year; the three scenarios are identical");
        }
        std::array<ScenarioProfile, 3> profiles;
        int i = 0;
        for (Scenario sc : {Scenario::high, Scenario::medium, Scenario::low}) {
            profiles[i] = build_scenario_profile(weather, sc, args.offset_c);
            auto out = open_output(fs::path(args.out_dir) /
                                   (std::string("temps_") + scenario_name(sc) + ".csv"));
            write_scenario_csv(out, profiles[i]);
            ++i;
        }
        auto sources = open_output(fs::path(args.out_dir) / "temps_sources.csv");
        sources << "day_index,high_source,medium_source,low_source\n";
        for (int d = 0; d < 365; ++d) {
            sources << (d + 1) << ',' << format_date(profiles[0].source_dates[d]) << ','
                    << format_date(profiles[1].source_dates[d]) << ','
                    << format_date(profiles[2].source_dates[d]) << '\n';
        }
        report.notes.push_back("wrote temps_{high,medium,low}.csv and temps_sources.csv");
    } catch (const std::exception& e) {
        report.errors.push_back(e.what());
        std::cerr << "build-temps: " << e.what() << "\n";
        status = 1;
    }
    report.write(fs::path(args.out_dir) / "run_report.txt");
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    return status;
}

int cmd_rate_year(const CommonArgs& args) {
    RunReport report;
    fs::create_directories(args.out_dir);
    int status = 0;
    try {
        const ThermalParameters params = load_thermal(args);
        FleetHistory fleet = load_fleet(args, report);
        const auto forecast = load_forecast(args);
        const PipelineOptions opts = pipeline_options(args);
        for (Scenario sc : selected_scenarios(args.scenario)) {
            const ScenarioProfile profile =
                build_scenario_profile(fleet.weather, sc, args.offset_c);
            const AnnualRatingProfile annual =
                annual_rating_profile(forecast, profile, fleet, params, args.seed, opts);
            for (const auto& day : annual.days) {
                if (day.rated && day.short_similar) {
                    std::ostringstream os;
                    os << scenario_name(sc) << " day " << day.day_index << ": only "
                       << day.similar_days.size() << " similar days available";
                    report.warnings.push_back(os.str());
                }
                if (!day.rated) {
                    std::ostringstream os;
                    os << scenario_name(sc) << " day " << day.day_index << " unrated: "
                       << day.error;
                    report.errors.push_back(os.str());
                }
            }
            const std::string name = scenario_name(sc);
            {
                auto out = open_output(fs::path(args.out_dir) / ("ratings_" + name + ".csv"));
                write_ratings_csv(out, annual);
            }
            {
                auto out = open_output(fs::path(args.out_dir) / ("shapes_" + name + ".csv"));
                write_shapes_csv(out, annual);
            }
            {
                auto out = open_output(fs::path(args.out_dir) / ("rating_" + name + ".svg"));
                write_rating_svg(out, annual);
            }
            report.notes.push_back("scenario " + name + ": wrote ratings_" + name +
                                   ".csv, shapes_" + name + ".csv, rating_" + name + ".svg");
        }
    } catch (const std::exception& e) {
        report.errors.push_back(e.what());
        std::cerr << "rate-year: " << e.what() << "\n";
    }
    report.write(fs::path(args.out_dir) / "run_report.txt");
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!report.errors.empty()) status = 1;
    return status;
}

struct BacktestArgs {
    std::string held_out;
    int target_year = 0;
    double test_fraction = 0.0;
};

int cmd_backtest(const CommonArgs& args, const BacktestArgs& bt) {
    RunReport report;
    fs::create_directories(args.out_dir);
    try {
        const ThermalParameters params = load_thermal(args);
        FleetHistory all = load_fleet(args, report);

        std::vector<HourlyTemperatureDay> target_weather;
        FleetHistory history;
        history.holidays = all.holidays;
        for (const auto& day : all.weather) {
            (day.date.year == bt.target_year ? target_weather : history.weather).push_back(day);
        }
        if (target_weather.empty()) {
            throw std::runtime_error("no weather for target year " +
                                     std::to_string(bt.target_year));
        }
        if (history.weather.empty()) {
            throw std::runtime_error("no history years left outside the target year");
        }
        for (const auto& obs : all.observations) {
            if (obs.date.year != bt.target_year) history.observations.push_back(obs);
        }
        if (history.observations.empty()) {
            throw std::runtime_error("no load history outside the target year");
        }

        std::vector<std::string> ids;
        for (const auto& obs : all.observations) {
            if (ids.empty() || ids.back() != obs.transformer_id) {
                ids.push_back(obs.transformer_id);
            }
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

        std::vector<std::string> chosen;
        if (bt.test_fraction > 0.0) {
            std::mt19937_64 rng(args.seed);
            std::shuffle(ids.begin(), ids.end(), rng);
            const std::size_t take = std::max<std::size_t>(
                1, static_cast<std::size_t>(bt.test_fraction * ids.size() + 0.5));
            chosen.assign(ids.begin(), ids.begin() + std::min(take, ids.size()));
            std::sort(chosen.begin(), chosen.end());
        } else {
            if (bt.held_out.empty()) {
                throw std::runtime_error("backtest needs --held-out ID or --test-fraction");
            }
            if (std::find(ids.begin(), ids.end(), bt.held_out) == ids.end()) {
                throw std::runtime_error("held-out transformer not found: " + bt.held_out);
            }
            chosen.push_back(bt.held_out);
        }

        // The target year's own weather stands in for the scenario, so the
        // comparison isolates load-shape estimation error: with a single
        // candidate year every profile day reproduces the actual day.
        const ScenarioProfile pseudo =
            build_scenario_profile(target_weather, Scenario::medium, 0.0);
        const PipelineOptions opts = pipeline_options(args);

        for (const auto& id : chosen) {
            std::vector<TransformerDayObservation> actual;
            for (const auto& obs : all.observations) {
                if (obs.transformer_id == id && obs.date.year == bt.target_year) {
                    actual.push_back(obs);
                }
            }
            if (actual.empty()) {
                report.errors.push_back("no target-year data for " + id);
                continue;
            }
            std::array<LoadComposition, 365> forecast{};
            std::array<bool, 365> covered{};
            for (const auto& obs : actual) {
                const int d = day_of_year_365(obs.date);
                forecast[d - 1] = obs.composition;
                covered[d - 1] = true;
            }
            for (int d = 1; d <= 365; ++d) {
                if (!covered[d - 1]) {
                    // carry the nearest known composition forward/backward
                    int fwd = d - 1;
                    while (fwd < 364 && !covered[fwd]) ++fwd;
                    int back = d - 1;
                    while (back > 0 && !covered[back]) --back;
                    forecast[d - 1] = covered[back] ? forecast[back] : forecast[fwd];
                }
            }
            const AnnualRatingProfile estimated =
                annual_rating_profile(forecast, pseudo, history, params, args.seed, opts);
            const BacktestReport result = backtest(actual, target_weather, estimated, params,
                                                   args.tolerance, opts.thermal);
            auto out = open_output(fs::path(args.out_dir) / ("backtest_" + id + ".csv"));
            write_backtest_csv(out, result);
            std::ostringstream os;
            os << id << ": winter ME " << format_double(result.winter.me_pct) << "% AE "
               << format_double(result.winter.ae_pct) << "% VE "
               << format_double(result.winter.ve_pct) << "% | summer ME "
               << format_double(result.summer.me_pct) << "% AE "
               << format_double(result.summer.ae_pct) << "% VE "
               << format_double(result.summer.ve_pct) << "%";
            report.notes.push_back(os.str());
            std::cout << os.str() << "\n";
        }
    } catch (const std::exception& e) {
        report.errors.push_back(e.what());
        std::cerr << "backtest: " << e.what() << "\n";
    }
    report.write(fs::path(args.out_dir) / "run_report.txt");
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    return report.errors.empty() ? 0 : 1;
}

struct SimDayArgs {
    std::string loads_path;   // hour,load_pu
    std::string ambient_path;  // hour,temp_c
    std::string date_text;     // pick ambient from the weather file
    double flat_load = -1.0;
    double flat_ambient = -1000.0;
};

std::array<double, 24> read_hourly_csv(const std::string& path, const std::string& header) {
    auto in = open_input(path, "hourly");
    std::string line;
    if (!std::getline(in, line) || std::string(strip_cr(line)) != header) {
        throw std::runtime_error(path + ": expected header '" + header + "'");
    }
    std::array<double, 24> values{};
    std::array<bool, 24> seen{};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        int hour = 0;
        double value = 0.0;
        if (fields.size() != 2 || !parse_int_field(fields[0], hour) || hour < 0 || hour > 23 ||
            !parse_double_field(fields[1], value)) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": want hour,value");
        }
        if (seen[hour]) {
            throw std::runtime_error(path + ": duplicate hour " + std::to_string(hour));
        }
        seen[hour] = true;
        values[hour] = value;
    }
    for (int h = 0; h < 24; ++h) {
        if (!seen[h]) throw std::runtime_error(path + ": missing hour " + std::to_string(h));
    }
    return values;
}

int cmd_simulate_day(const CommonArgs& args, const SimDayArgs& sim) {
    try {
        const ThermalParameters params = load_thermal(args);
        std::array<double, 24> loads{};
        if (!sim.loads_path.empty()) {
            loads = read_hourly_csv(sim.loads_path, "hour,load_pu");
        } else if (sim.flat_load >= 0.0) {
            loads.fill(sim.flat_load);
        } else {
            throw std::runtime_error("simulate-day needs --day-loads or --flat-load");
        }
        std::array<double, 24> ambient{};
        if (!sim.ambient_path.empty()) {
            ambient = read_hourly_csv(sim.ambient_path, "hour,temp_c");
        } else if (!sim.date_text.empty()) {
            const auto date = parse_date(sim.date_text);
            if (!date) throw std::runtime_error("malformed --date (want YYYY-MM-DD)");
            RunReport scratch;
            const auto weather = load_weather(args, scratch);
            const auto it = std::find_if(weather.begin(), weather.end(),
                                         [&](const auto& d) { return d.date == *date; });
            if (it == weather.end()) {
                throw std::runtime_error("date not present in the weather history");
            }
            ambient = it->temps;
        } else if (sim.flat_ambient > -999.0) {
            ambient.fill(sim.flat_ambient);
        } else {
            throw std::runtime_error(
                "simulate-day needs --day-ambient, --date or --flat-ambient");
        }

        const DayThermalResult result = simulate_day(params, loads, ambient);
        fs::create_directories(args.out_dir);
        auto out = open_output(fs::path(args.out_dir) / "trace.csv");
        write_trace_csv(out, loads, ambient, result);
        std::cout << "f_eqa " << format_double(result.f_eqa) << "\n"
                  << "peak_hotspot_c " << format_double(result.peak_hotspot_c) << "\n"
                  << "passes " << result.passes << "\n"
                  << "converged " << (result.converged ? "yes" : "no") << "\n";
        return result.converged ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "simulate-day: " << e.what() << "\n";
        return 1;
    }
}

struct MetricsArgs {
    std::string actual_path;
    std::string estimated_path;
};

std::map<int, double> read_ratings_csv(const std::string& path) {
    auto in = open_input(path, "ratings");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const auto header = split_fields(strip_cr(line));
    int day_col = -1, rating_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "day_index") day_col = static_cast<int>(i);
        if (header[i] == "rating_mva") rating_col = static_cast<int>(i);
    }
    if (day_col < 0 || rating_col < 0) {
        throw std::runtime_error(path + ": need day_index and rating_mva columns");
    }
    std::map<int, double> ratings;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto row = strip_cr(line);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        int day = 0;
        double rating = 0.0;
        if (static_cast<int>(fields.size()) <= std::max(day_col, rating_col) ||
            !parse_int_field(fields[day_col], day) ||
            !parse_double_field(fields[rating_col], rating) || day < 1 || day > 365) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": malformed row");
        }
        ratings[day] = rating;
    }
    return ratings;
}

int cmd_metrics(const CommonArgs& args, const MetricsArgs& ma) {
    try {
        const auto actual = read_ratings_csv(ma.actual_path);
        const auto estimated = read_ratings_csv(ma.estimated_path);
        std::vector<double> a_all, e_all, a_summer, e_summer, a_winter, e_winter;
        for (const auto& [day, rating] : actual) {
            const auto it = estimated.find(day);
            if (it == estimated.end()) continue;
            a_all.push_back(rating);
            e_all.push_back(it->second);
            const Date date = date_from_day_of_year_365(2001, day);
            if (is_summer_month(date.month)) {
                a_summer.push_back(rating);
                e_summer.push_back(it->second);
            } else {
                a_winter.push_back(rating);
                e_winter.push_back(it->second);
            }
        }
        if (a_all.empty()) throw std::runtime_error("no overlapping day_index rows");
        fs::create_directories(args.out_dir);
        auto out = open_output(fs::path(args.out_dir) / "metrics.csv");
        out << "season,me_pct,ae_pct,ve_pct\n";
        const auto emit = [&](const char* season, const std::vector<double>& a,
                              const std::vector<double>& e) {
            if (a.empty()) return;
            out << season << ',' << format_double(metric_me(a, e)) << ','
                << format_double(metric_ae(a, e)) << ',' << format_double(metric_ve(a, e))
                << '\n';
        };
        emit("all", a_all, e_all);
        emit("winter", a_winter, e_winter);
        emit("summer", a_summer, e_summer);
        std::cout << "me_pct " << format_double(metric_me(a_all, e_all)) << "\n"
                  << "ae_pct " << format_double(metric_ae(a_all, e_all)) << "\n"
                  << "ve_pct " << format_double(metric_ve(a_all, e_all)) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "metrics: " << e.what() << "\n";
        return 1;
    }
}

struct FixtureArgs {
    int years = 2;
    int first_year = 2016;
    int transformers = 10;
    bool identical_shapes = false;
};

int cmd_gen_fixture(const CommonArgs& args, const FixtureArgs& fx) {
    try {
        SynthOptions options;
        options.years.clear();
        for (int y = 0; y < fx.years; ++y) options.years.push_back(fx.first_year + y);
        options.transformers = fx.transformers;
        options.seed = args.seed;
        options.identical_shapes = fx.identical_shapes;
        const SynthDataset data = make_synth_dataset(options);

        const fs::path dir(args.out_dir);
        fs::create_directories(dir);
        {
            auto out = open_output(dir / "weather.csv");
            write_weather_csv(out, data.weather);
        }
        {
            auto loads = open_output(dir / "loads.csv");
            auto comps = open_output(dir / "compositions.csv");
            write_transformer_csv(loads, comps, data.observations);
        }
        {
            auto out = open_output(dir / "thermal.txt");
            out << "preset = onaf50\n";
        }
        {
            auto out = open_output(dir / "forecast.csv");
            out << "date_range,r_frac,c_frac,i_frac\n";
            out << "all,0.4,0.35,0.25\n";
        }
        {
            auto out = open_output(dir / "config.ini");
            out << "weather=" << fs::absolute(dir / "weather.csv").string() << "\n"
                << "loads=" << fs::absolute(dir / "loads.csv").string() << "\n"
                << "compositions=" << fs::absolute(dir / "compositions.csv").string() << "\n"
                << "thermal=" << fs::absolute(dir / "thermal.txt").string() << "\n"
                << "forecast=" << fs::absolute(dir / "forecast.csv").string() << "\n"
                << "seed=" << args.seed << "\n"
                << "offset-c=" << format_double(args.offset_c) << "\n"
                << "tolerance=" << format_double(args.tolerance) << "\n"
                << "out-dir=" << fs::absolute(dir / "out").string() << "\n";
        }
        std::cout << "fixture written to " << fs::absolute(dir).string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "gen-fixture: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Annual continuous dynamic transformer rating estimation"};
    app.require_subcommand(1);

    CommonArgs args;
    app.set_config("--config", "", "Configuration file (INI: key=value, keys match long flags)");
    app.add_option("--weather", args.weather_path, "Weather history CSV (timestamp,temp_c)");
    app.add_option("--loads", args.loads_path,
                   "Transformer loads CSV (transformer_id,timestamp,load_mva)");
    app.add_option("--compositions", args.compositions_path,
                   "Compositions CSV (transformer_id,date,r_frac,c_frac,i_frac)");
    app.add_option("--holidays", args.holidays_path, "Holiday list, one YYYY-MM-DD per line");
    app.add_option("--thermal", args.thermal_path, "Thermal parameter file (key = value)");
    app.add_option("--preset", args.preset, "Thermal preset when no --thermal file (onaf50)");
    app.add_option("--forecast", args.forecast_path,
                   "Forecast composition CSV (date_range,r_frac,c_frac,i_frac)");
    app.add_option("--seed", args.seed, "Deterministic seed (no wall-clock seeding)");
    app.add_option("--offset-c", args.offset_c, "Offset added to every scenario hour, degC");
    app.add_option("--tolerance", args.tolerance, "Rating solver tolerance on the aging factor");
    app.add_option("--k-min", args.k_min, "Smallest cluster count tried");
    app.add_option("--k-max", args.k_max, "Largest cluster count tried");
    app.add_option("--similar-days", args.similar_days, "Similar days retrieved per profile day");
    app.add_option("--max-gap-hours", args.max_gap_hours,
                   "Longest interpolatable weather gap, hours");
    app.add_option("--out-dir", args.out_dir, "Output directory");
    app.add_option("--scenario", args.scenario, "high|medium|low|all");
    app.add_option("--parallelism", args.parallelism, "Worker threads for the 365-day loop");

    auto* build_temps = app.add_subcommand(
        "build-temps", "Build the three annual temperature scenario profiles");
    build_temps->fallthrough();

    auto* rate_year = app.add_subcommand(
        "rate-year", "Estimate the three annual dynamic rating profiles");
    rate_year->fallthrough();

    BacktestArgs bt;
    auto* backtest_cmd = app.add_subcommand(
        "backtest", "Hold out one transformer-year and score the estimate against it");
    backtest_cmd->fallthrough();
    backtest_cmd->add_option("--held-out", bt.held_out, "Transformer id to hold out");
    backtest_cmd->add_option("--target-year", bt.target_year, "Year to reconstruct")->required();
    backtest_cmd->add_option("--test-fraction", bt.test_fraction,
                             "Score a random fraction of transformers instead of one id");

    SimDayArgs sim;
    auto* simulate_day_cmd =
        app.add_subcommand("simulate-day", "Run the 24 h thermal recursion for one day");
    simulate_day_cmd->fallthrough();
    simulate_day_cmd->add_option("--day-loads", sim.loads_path, "Per-unit loads CSV (hour,load_pu)");
    simulate_day_cmd->add_option("--day-ambient", sim.ambient_path, "Ambient CSV (hour,temp_c)");
    simulate_day_cmd->add_option("--date", sim.date_text,
                                 "Take ambient from the weather file at this date");
    simulate_day_cmd->add_option("--flat-load", sim.flat_load, "Constant per-unit load");
    simulate_day_cmd->add_option("--flat-ambient", sim.flat_ambient, "Constant ambient, degC");

    MetricsArgs ma;
    auto* metrics_cmd =
        app.add_subcommand("metrics", "Score two rating CSVs (day_index + rating_mva columns)");
    metrics_cmd->fallthrough();
    metrics_cmd->add_option("--actual", ma.actual_path, "Reference ratings CSV")->required();
    metrics_cmd->add_option("--estimated", ma.estimated_path, "Estimated ratings CSV")
        ->required();

    FixtureArgs fx;
    auto* gen_fixture = app.add_subcommand(
        "gen-fixture", "Write a seed-locked synthetic dataset plus a ready config");
    gen_fixture->fallthrough();
    gen_fixture->add_option("--years", fx.years, "Number of history years");
    gen_fixture->add_option("--first-year", fx.first_year, "First history year");
    gen_fixture->add_option("--transformers", fx.transformers, "Fleet size");
    gen_fixture->add_flag("--identical-shapes", fx.identical_shapes,
                          "All transformers share one composition and load shape");

    CLI11_PARSE(app, argc, argv);

    if (build_temps->parsed()) return cmd_build_temps(args);
    if (rate_year->parsed()) return cmd_rate_year(args);
    if (backtest_cmd->parsed()) return cmd_backtest(args, bt);
    if (simulate_day_cmd->parsed()) return cmd_simulate_day(args, sim);
    if (metrics_cmd->parsed()) return cmd_metrics(args, ma);
    if (gen_fixture->parsed()) return cmd_gen_fixture(args, fx);
    return 0;
}
