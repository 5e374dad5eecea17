#include "txrate/load_shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txrate {
namespace {

void check_fraction(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument(std::string("composition fraction out of [0,1]: ") + name);
    }
}

}  // namespace

LoadComposition make_composition(double r, double c, double i, double tol) {
    check_fraction(r, "r");
    check_fraction(c, "c");
    check_fraction(i, "i");
    const double sum = r + c + i;
    if (std::abs(sum - 1.0) > tol) {
        throw std::invalid_argument("composition fractions must sum to 1");
    }
    LoadComposition out{r / sum, c / sum, 0.0};
    out.i = 1.0 - out.r - out.c;
    return out;
}

LoadComposition compute_composition(const CategoryPeakLoads& loads, double peak_mva) {
    if (!(peak_mva > 0.0)) throw std::invalid_argument("transformer peak must be positive");
    for (double v : {loads.residential_mva, loads.commercial_mva, loads.industrial_mva}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("category loads must be non-negative");
        }
    }
    const double sum = loads.residential_mva + loads.commercial_mva + loads.industrial_mva;
    if (std::abs(sum - peak_mva) > 0.01 * peak_mva) {
        throw std::invalid_argument("category loads deviate from the transformer peak by over 1%");
    }
    LoadComposition out{loads.residential_mva / sum, loads.commercial_mva / sum, 0.0};
    out.i = 1.0 - out.r - out.c;
    return out;
}

NormalizedLoadShape normalize_profile(const std::array<double, 24>& loads_mva) {
    const double peak = *std::max_element(loads_mva.begin(), loads_mva.end());
    if (!(peak > 0.0)) throw std::invalid_argument("day has no positive load");
    NormalizedLoadShape shape;
    for (int h = 0; h < 24; ++h) shape.values[h] = loads_mva[h] / peak;
    return shape;
}

CentroidProfilesResult centroid_profiles(std::span<const NormalizedLoadShape> shapes,
                                         std::span<const Membership> responsibilities, int k) {
    if (shapes.size() != responsibilities.size()) {
        throw std::invalid_argument("centroid_profiles: member count mismatch");
    }
    if (k < 1) throw std::invalid_argument("centroid_profiles: k must be at least 1");
    for (const auto& m : responsibilities) {
        if (static_cast<int>(m.probabilities.size()) != k) {
            throw std::invalid_argument("centroid_profiles: responsibility vector length != k");
        }
    }
    CentroidProfilesResult result;
    for (int cl = 0; cl < k; ++cl) {
        double mass = 0.0;
        for (const auto& m : responsibilities) mass += m.probabilities[cl];
        if (mass < 1e-9) {
            result.dropped.push_back(cl);
            continue;
        }
        ClusterCentroidProfile centroid;
        centroid.cluster_index = cl;
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            const double w = responsibilities[i].probabilities[cl];
            for (int h = 0; h < 24; ++h) centroid.profile[h] += w * shapes[i].values[h];
        }
        for (int h = 0; h < 24; ++h) centroid.profile[h] /= mass;
        centroid.peak = *std::max_element(centroid.profile.begin(), centroid.profile.end());
        result.profiles.push_back(centroid);
    }
    return result;
}

std::array<double, 24> construct_load_shape(const Membership& future_membership,
                                            std::span<const ClusterCentroidProfile> centroids) {
    if (centroids.empty()) {
        throw std::invalid_argument("construct_load_shape: no centroids");
    }
    double kept_mass = 0.0;
    for (const auto& c : centroids) {
        if (c.cluster_index < 0 ||
            c.cluster_index >= static_cast<int>(future_membership.probabilities.size())) {
            throw std::invalid_argument("construct_load_shape: centroid index out of range");
        }
        if (!(c.peak > 0.0)) throw std::invalid_argument("construct_load_shape: centroid peak <= 0");
        kept_mass += future_membership.probabilities[c.cluster_index];
    }
    std::array<double, 24> shape{};
    if (kept_mass <= 0.0) {
        // The forecast point's mass sits entirely on dropped clusters; fall
        // back to an unweighted mean of the surviving centroid shapes.
        for (const auto& c : centroids) {
            for (int h = 0; h < 24; ++h) {
                shape[h] += c.profile[h] / c.peak / static_cast<double>(centroids.size());
            }
        }
        return shape;
    }
    for (const auto& c : centroids) {
        const double p = future_membership.probabilities[c.cluster_index] / kept_mass;
        for (int h = 0; h < 24; ++h) shape[h] += p * (c.profile[h] / c.peak);
    }
    return shape;
}

}  // namespace txrate
