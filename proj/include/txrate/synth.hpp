#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "txrate/ingest.hpp"
#include "txrate/rating.hpp"

namespace txrate {

/// Seed-locked synthetic dataset: seasonal + daily sinusoid weather and a
/// small fleet whose 24 h load shapes follow their compositions (peaky
/// residential evenings, daytime commercial blocks, flat industrial load).
struct SynthOptions {
    std::vector<int> years = {2016, 2017};
    int transformers = 10;
    std::uint64_t seed = 42;
    /// Every transformer gets the same composition and the same load shape
    /// with exactly representable values, so shape synthesis reproduces it
    /// bit for bit (used by the self-consistency checks).
    bool identical_shapes = false;
};

struct SynthDataset {
    std::vector<HourlyTemperatureDay> weather;
    std::vector<TransformerDayObservation> observations;
    HolidayCalendar holidays;  // none; weekends still count as holidays

    FleetHistory fleet() const { return {weather, observations, holidays}; }
};

SynthDataset make_synth_dataset(const SynthOptions& options);

/// Weather-only history: one seasonal pattern per year with small per-year
/// offsets, except `dominant_year` which runs 5 degC hotter so it carries
/// the highest daily mean on all 365 days.
std::vector<HourlyTemperatureDay> make_dominant_year_weather(std::span<const int> years,
                                                             int dominant_year,
                                                             std::uint64_t seed);

/// The composition assigned to transformer index t (cycles through
/// residential-, commercial- and industrial-heavy prototypes).
LoadComposition synth_composition(int t, bool identical_shapes);

}  // namespace txrate
