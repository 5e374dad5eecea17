#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "txrate/calendar.hpp"

namespace txrate {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// 2x2 matrix [[a, b], [c, d]]. Covariances keep b == c.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

/// One transformer-day (or the future target) in 2-D composition space.
/// Coordinates are the residential/commercial fractions after min-max
/// scaling over the clustering population.
struct CompositionPoint {
    double r = 0.0;
    double c = 0.0;
    std::string transformer_id;  // empty for the future target
    Date date;
    bool future_target = false;
};

struct GmmComponent {
    Vec2 mean;
    Mat2 covariance;
    double weight = 0.0;
};

struct GmmModel {
    std::vector<GmmComponent> components;
    double log_likelihood = 0.0;
    std::uint64_t seed = 0;

    int k() const { return static_cast<int>(components.size()); }
};

/// Per-point posterior probabilities over the model's components.
/// Entries are in [0,1] and sum to 1 within 1e-9.
struct Membership {
    std::vector<double> probabilities;
};

/// Thrown when a fit cannot produce k distinguishable clusters (all points
/// identical with k > 1, or no candidate k yields two or more occupied
/// clusters during selection).
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bivariate normal density. The covariance must be symmetric positive
/// definite; throws std::invalid_argument if it is singular.
double gaussian_pdf(const Vec2& x, const Vec2& mean, const Mat2& covariance);

struct GmmOptions {
    int n_init = 5;               // seeded restarts, best final log-likelihood wins
    int max_iterations = 500;
    double ll_tolerance = 1e-6;   // absolute change in log-likelihood
    double cov_floor = 1e-6;      // added to covariance diagonals each M-step
    // When set, receives one log-likelihood sequence per restart.
    std::vector<std::vector<double>>* ll_trace = nullptr;
};

/// Expectation-maximization fit of a k-component mixture. Initial means are
/// k distinct points drawn with the seeded generator; initial covariances
/// are identity scaled by the average per-axis sample variance; weights are
/// uniform. Deterministic for fixed (points, k, seed, options).
GmmModel fit_gmm(std::span<const CompositionPoint> points, int k, std::uint64_t seed,
                 const GmmOptions& options = {});

Membership membership(const GmmModel& model, const CompositionPoint& x);

/// Hard label = argmax membership (first index on ties).
int hard_label(const GmmModel& model, const CompositionPoint& x);

/// Average silhouette over all points, Euclidean distance, singleton
/// clusters contributing 0. Requires at least two distinct labels.
double silhouette_avg(std::span<const CompositionPoint> points, std::span<const int> labels);

struct KSelection {
    int k_star = 0;
    GmmModel model;
    double q_avg = 0.0;
};

/// Fits every k in [k_min, k_max], scores each by average silhouette of the
/// hard labeling, and returns the best (ties to the smaller k). Candidate k
/// whose hard labels collapse to a single cluster cannot be scored and are
/// skipped; throws DegenerateFitError if no candidate can be scored.
KSelection select_k(std::span<const CompositionPoint> points, int k_min, int k_max,
                    std::uint64_t seed, const GmmOptions& options = {});

}  // namespace txrate
