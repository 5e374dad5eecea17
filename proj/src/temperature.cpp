#include "txrate/temperature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "txrate/csv.hpp"

namespace txrate {

DayFeatures compute_day_features(const HourlyTemperatureDay& day, DayType day_type) {
    DayFeatures f;
    f.date = day.date;
    f.day_type = day_type;
    double sum = 0.0;
    double high = day.temps[0];
    double low = day.temps[0];
    for (double t : day.temps) {
        sum += t;
        high = std::max(high, t);
        low = std::min(low, t);
    }
    f.mean_c = sum / 24.0;
    f.high_c = high;
    f.low_c = low;
    const int d = day_of_year_365(day.date);
    f.season = std::sin(2.0 * std::numbers::pi * d / 365.0);
    return f;
}

namespace {

std::array<double, 4> feature_axes(const DayFeatures& f) {
    return {f.mean_c, f.high_c, f.low_c, f.season};
}

}  // namespace

FeatureNormalizer FeatureNormalizer::fit(std::span<const DayFeatures> corpus) {
    if (corpus.empty()) throw std::invalid_argument("FeatureNormalizer: empty corpus");
    FeatureNormalizer norm;
    norm.min_ = feature_axes(corpus[0]);
    norm.max_ = norm.min_;
    for (const auto& f : corpus.subspan(1)) {
        const auto axes = feature_axes(f);
        for (int a = 0; a < 4; ++a) {
            norm.min_[a] = std::min(norm.min_[a], axes[a]);
            norm.max_[a] = std::max(norm.max_[a], axes[a]);
        }
    }
    return norm;
}

std::array<double, 4> FeatureNormalizer::normalize(const DayFeatures& f) const {
    const auto axes = feature_axes(f);
    std::array<double, 4> out{};
    for (int a = 0; a < 4; ++a) {
        const double span = max_[a] - min_[a];
        if (span <= 0.0) continue;  // constant axis carries no information
        out[a] = std::clamp((axes[a] - min_[a]) / span, 0.0, 1.0);
    }
    return out;
}

ScenarioProfile build_scenario_profile(std::span<const HourlyTemperatureDay> history,
                                       Scenario scenario, double offset_c) {
    struct Candidate {
        double mean_c;
        int year;
        const HourlyTemperatureDay* day;
    };
    std::map<int, std::vector<Candidate>> by_doy;
    for (const auto& day : history) {
        double sum = 0.0;
        for (double t : day.temps) sum += t;
        by_doy[day_of_year_365(day.date)].push_back({sum / 24.0, day.date.year, &day});
    }

    ScenarioProfile profile;
    profile.scenario = scenario;
    profile.offset_c = offset_c;
    for (int d = 1; d <= 365; ++d) {
        auto it = by_doy.find(d);
        if (it == by_doy.end()) {
            throw std::invalid_argument("no history for day of year " + std::to_string(d));
        }
        auto& cands = it->second;
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.mean_c != b.mean_c) return a.mean_c < b.mean_c;
            return a.year < b.year;
        });
        std::size_t pick = 0;
        switch (scenario) {
            case Scenario::low: pick = 0; break;
            case Scenario::medium: pick = (cands.size() - 1) / 2; break;
            case Scenario::high: pick = cands.size() - 1; break;
        }
        const auto& chosen = *cands[pick].day;
        profile.source_dates[d - 1] = chosen.date;
        for (int h = 0; h < 24; ++h) profile.temps[d - 1][h] = chosen.temps[h] + offset_c;
    }
    return profile;
}

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::high: return "high";
        case Scenario::medium: return "medium";
        case Scenario::low: return "low";
    }
    return "unknown";
}

void write_scenario_csv(std::ostream& out, const ScenarioProfile& profile) {
    out << "day_index,source_date,hour,temp_c\n";
    for (int d = 0; d < 365; ++d) {
        const std::string date_text = format_date(profile.source_dates[d]);
        for (int h = 0; h < 24; ++h) {
            out << (d + 1) << ',' << date_text << ',' << h << ','
                << format_double(profile.temps[d][h]) << '\n';
        }
    }
}

SimilarDaysResult find_similar_days(const DayFeatures& target,
                                    std::span<const DayFeatures> history,
                                    const FeatureNormalizer& normalizer, int count) {
    if (count < 1) throw std::invalid_argument("find_similar_days: count must be >= 1");
    struct Scored {
        double dist_sq;
        Date date;
    };
    const auto t = normalizer.normalize(target);
    std::vector<Scored> scored;
    for (const auto& cand : history) {
        if (cand.day_type != target.day_type) continue;
        const auto c = normalizer.normalize(cand);
        double d = 0.0;
        for (int a = 0; a < 4; ++a) d += (t[a] - c[a]) * (t[a] - c[a]);
        scored.push_back({d, cand.date});
    }
    if (scored.empty()) {
        throw std::invalid_argument("find_similar_days: no candidate shares the day type");
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
        return a.date > b.date;  // ties: more recent first
    });
    SimilarDaysResult result;
    result.short_count = scored.size() < static_cast<std::size_t>(count);
    const std::size_t take = std::min(scored.size(), static_cast<std::size_t>(count));
    result.dates.reserve(take);
    for (std::size_t i = 0; i < take; ++i) result.dates.push_back(scored[i].date);
    return result;
}

}  // namespace txrate
