#pragma once

#include <array>
#include <span>
#include <vector>

#include "txrate/gmm.hpp"

namespace txrate {

/// Fractions of a transformer's peak-hour load by customer category.
/// r + c + i == 1 to within 1e-9 after construction.
struct LoadComposition {
    double r = 0.0;  // residential
    double c = 0.0;  // commercial
    double i = 0.0;  // industrial
};

/// Validates fractions in [0,1] and |r+c+i-1| <= tol, then renormalizes so
/// the sum is exactly 1. Throws std::invalid_argument otherwise.
LoadComposition make_composition(double r, double c, double i, double tol = 1e-6);

/// 24-hour profile in per-unit of its own daily peak (max element is 1).
struct NormalizedLoadShape {
    std::array<double, 24> values{};
};

/// Category loads measured at the transformer's daily peak hour.
struct CategoryPeakLoads {
    double residential_mva = 0.0;
    double commercial_mva = 0.0;
    double industrial_mva = 0.0;
};

/// Composition from peak-hour category loads. The category sum must match
/// the transformer peak within 1% (metering coincidence slack); fractions
/// are taken against the category sum so they add to exactly 1.
LoadComposition compute_composition(const CategoryPeakLoads& loads, double peak_mva);

/// Per-unit-of-peak normalization of a raw 24-hour MVA profile.
/// Throws std::invalid_argument when the day has no positive load.
NormalizedLoadShape normalize_profile(const std::array<double, 24>& loads_mva);

/// Representative 24-hour profile of one mixture cluster: the
/// responsibility-weighted mean of member normalized shapes.
struct ClusterCentroidProfile {
    int cluster_index = 0;
    std::array<double, 24> profile{};
    double peak = 0.0;  // max over hours of profile
};

struct CentroidProfilesResult {
    std::vector<ClusterCentroidProfile> profiles;
    std::vector<int> dropped;  // clusters whose responsibility mass was < 1e-9
};

/// One centroid profile per cluster with nonzero responsibility mass.
/// shapes[i] and responsibilities[i] describe the same member; every
/// responsibility vector must have length k.
CentroidProfilesResult centroid_profiles(std::span<const NormalizedLoadShape> shapes,
                                         std::span<const Membership> responsibilities, int k);

/// Future transformer's 24-hour per-unit shape: the membership-weighted mean
/// of peak-normalized centroid shapes. Membership entries for dropped
/// clusters are renormalized over the centroids that remain.
std::array<double, 24> construct_load_shape(const Membership& future_membership,
                                            std::span<const ClusterCentroidProfile> centroids);

}  // namespace txrate
