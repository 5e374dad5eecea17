#include "txrate/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace txrate {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 1/64 units with the residential and commercial peaks at exactly 1.0.
constexpr int kResidential64[24] = {30, 28, 26, 26, 26, 28, 34, 40, 42, 40, 38, 38,
                                    38, 38, 40, 44, 50, 56, 62, 64, 60, 52, 42, 34};
constexpr int kCommercial64[24] = {20, 18, 18, 18, 18, 20, 26, 36, 48, 58, 62, 64,
                                   64, 64, 62, 60, 56, 48, 38, 32, 28, 26, 24, 22};
constexpr int kIndustrial64[24] = {56, 56, 54, 54, 54, 56, 58, 60, 62, 62, 62, 62,
                                   60, 62, 62, 62, 60, 60, 58, 58, 58, 56, 56, 56};

constexpr double kCompositions[10][3] = {
    {0.78, 0.12, 0.10}, {0.72, 0.18, 0.10}, {0.75, 0.10, 0.15}, {0.15, 0.75, 0.10},
    {0.10, 0.80, 0.10}, {0.18, 0.72, 0.10}, {0.10, 0.15, 0.75}, {0.08, 0.12, 0.80},
    {0.12, 0.10, 0.78}, {0.40, 0.35, 0.25}};

double seasonal_mean_c(int d365) {
    return 10.0 - 14.0 * std::cos(2.0 * std::numbers::pi * (d365 - 15) / 365.0);
}

double hour_swing_c(int hour) {
    return 5.0 * std::sin(2.0 * std::numbers::pi * (hour - 9) / 24.0);
}

/// Uniform on {-1.5, -1.0, ..., 1.5}. Coarse steps keep candidate daily
/// means from nearly tying across years, so scenario picks stay stable.
double quantized_noise_c(std::mt19937_64& rng) {
    return 0.5 * static_cast<double>(static_cast<int>(rng() % 7) - 3);
}

std::string transformer_name(int t) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d", t + 1);
    return buf;
}

}  // namespace

LoadComposition synth_composition(int t, bool identical_shapes) {
    if (identical_shapes) return make_composition(0.5, 0.3, 0.2);
    const auto& c = kCompositions[t % 10];
    return make_composition(c[0], c[1], c[2]);
}

SynthDataset make_synth_dataset(const SynthOptions& options) {
    SynthDataset data;
    std::mt19937_64 weather_rng(splitmix64(options.seed));
    int year_index = 0;
    for (int year : options.years) {
        const double year_offset = 0.13 * year_index++;
        for (int d = 1; d <= 365; ++d) {
            HourlyTemperatureDay day;
            day.date = date_from_day_of_year_365(year, d);
            const double base = seasonal_mean_c(d) + year_offset + quantized_noise_c(weather_rng);
            for (int h = 0; h < 24; ++h) day.temps[h] = base + hour_swing_c(h);
            data.weather.push_back(day);
        }
    }

    for (int t = 0; t < options.transformers; ++t) {
        const LoadComposition comp = synth_composition(t, options.identical_shapes);
        std::array<double, 24> shape;
        for (int h = 0; h < 24; ++h) {
            if (options.identical_shapes) {
                shape[h] = kResidential64[h] / 64.0;
            } else {
                shape[h] = (comp.r * kResidential64[h] + comp.c * kCommercial64[h] +
                            comp.i * kIndustrial64[h]) /
                           64.0;
            }
        }
        const double peak_mva = options.identical_shapes ? 32.0 : 24.0 + 3.0 * (t % 10);
        for (int year : options.years) {
            for (int d = 1; d <= 365; ++d) {
                TransformerDayObservation obs;
                obs.transformer_id = transformer_name(t);
                obs.date = date_from_day_of_year_365(year, d);
                obs.composition = comp;
                const double scale =
                    options.identical_shapes
                        ? peak_mva
                        : peak_mva * (1.0 + 0.15 * std::cos(2.0 * std::numbers::pi *
                                                            (d - 15) / 365.0));
                for (int h = 0; h < 24; ++h) obs.loads[h] = scale * shape[h];
                data.observations.push_back(std::move(obs));
            }
        }
    }
    return data;
}

std::vector<HourlyTemperatureDay> make_dominant_year_weather(std::span<const int> years,
                                                             int dominant_year,
                                                             std::uint64_t seed) {
    std::vector<HourlyTemperatureDay> weather;
    std::mt19937_64 rng(splitmix64(seed ^ 0x517cc1b727220a95ULL));
    int index = 0;
    for (int year : years) {
        const double year_offset = (year == dominant_year) ? 5.0 : 0.13 * index;
        ++index;
        for (int d = 1; d <= 365; ++d) {
            HourlyTemperatureDay day;
            day.date = date_from_day_of_year_365(year, d);
            const double base = seasonal_mean_c(d) + year_offset + quantized_noise_c(rng);
            for (int h = 0; h < 24; ++h) day.temps[h] = base + hour_swing_c(h);
            weather.push_back(day);
        }
    }
    return weather;
}

}  // namespace txrate
