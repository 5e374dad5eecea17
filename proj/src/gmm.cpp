#include "txrate/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace txrate {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

double sq_dist(const Vec2& p, const Vec2& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

int nearest_mean(const GmmModel& model, const Vec2& x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < model.k(); ++j) {
        const double d = sq_dist(x, model.components[j].mean);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

Vec2 point_vec(const CompositionPoint& p) { return {p.r, p.c}; }

}  // namespace

double gaussian_pdf(const Vec2& x, const Vec2& mean, const Mat2& cov) {
    const double det = cov.a * cov.d - cov.b * cov.c;
    if (!(cov.a > 0.0) || !(cov.d > 0.0) || !(det > 0.0)) {
        throw std::invalid_argument("gaussian_pdf: covariance is not positive definite");
    }
    const double dx = x.x - mean.x;
    const double dy = x.y - mean.y;
    // dx' * inv(cov) * dx with inv = [[d, -b], [-c, a]] / det
    const double quad = (dx * (cov.d * dx - cov.b * dy) + dy * (cov.a * dy - cov.c * dx)) / det;
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

namespace {

struct EmFit {
    GmmModel model;
    bool valid = false;
};

EmFit run_em(std::span<const CompositionPoint> points, int k, std::uint64_t restart_seed,
             const GmmOptions& options, std::vector<double>* trace) {
    const std::size_t n = points.size();
    std::mt19937_64 rng(restart_seed);

    // Initial means: k of the distinct point values, order randomized.
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < n; ++i) {
        bool seen = false;
        for (std::size_t j : distinct) {
            if (points[j].r == points[i].r && points[j].c == points[i].c) {
                seen = true;
                break;
            }
        }
        if (!seen) distinct.push_back(i);
    }
    if (static_cast<int>(distinct.size()) < k) {
        throw DegenerateFitError("fit_gmm: fewer distinct points than components");
    }
    std::shuffle(distinct.begin(), distinct.end(), rng);

    double var_sum = 0.0;
    {
        double mr = 0.0, mc = 0.0;
        for (const auto& p : points) {
            mr += p.r;
            mc += p.c;
        }
        mr /= static_cast<double>(n);
        mc /= static_cast<double>(n);
        for (const auto& p : points) {
            var_sum += (p.r - mr) * (p.r - mr) + (p.c - mc) * (p.c - mc);
        }
    }
    // Small identity scale so each seeded mean dominates the first assignment;
    // at the pooled variance, separated clusters share responsibility almost
    // uniformly and EM stalls on the merged saddle. Washes out after one M-step.
    const double init_var =
        std::max(0.01 * var_sum / (2.0 * static_cast<double>(n)), options.cov_floor);

    GmmModel model;
    model.seed = restart_seed;
    model.components.resize(k);
    for (int j = 0; j < k; ++j) {
        auto& comp = model.components[j];
        comp.mean = point_vec(points[distinct[j]]);
        comp.covariance = {init_var, 0.0, 0.0, init_var};
        comp.weight = 1.0 / k;
    }

    std::vector<double> resp(n * k);
    double prev_ll = -std::numeric_limits<double>::infinity();
    GmmModel checkpoint;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        // E-step
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 x = point_vec(points[i]);
            double row_sum = 0.0;
            for (int j = 0; j < k; ++j) {
                const auto& comp = model.components[j];
                const double d = comp.weight > 0.0
                                     ? comp.weight * gaussian_pdf(x, comp.mean, comp.covariance)
                                     : 0.0;
                resp[i * k + j] = d;
                row_sum += d;
            }
            if (row_sum > 0.0 && std::isfinite(row_sum)) {
                for (int j = 0; j < k; ++j) resp[i * k + j] /= row_sum;
                ll += std::log(row_sum);
            } else {
                const int near = nearest_mean(model, x);
                for (int j = 0; j < k; ++j) resp[i * k + j] = (j == near) ? 1.0 : 0.0;
                ll += std::log(std::numeric_limits<double>::min());
            }
        }
        if (ll < prev_ll) {
            // The covariance floor re-added each M-step can nudge a converged
            // fit slightly off its optimum; discard the worsening step.
            model = std::move(checkpoint);
            model.log_likelihood = prev_ll;
            break;
        }
        if (trace) trace->push_back(ll);
        model.log_likelihood = ll;
        if (std::abs(ll - prev_ll) < options.ll_tolerance) break;
        prev_ll = ll;
        checkpoint = model;

        // M-step
        for (int j = 0; j < k; ++j) {
            double mass = 0.0;
            for (std::size_t i = 0; i < n; ++i) mass += resp[i * k + j];
            auto& comp = model.components[j];
            comp.weight = mass / static_cast<double>(n);
            if (mass <= 0.0) continue;  // emptied component keeps its shape at weight 0
            double mr = 0.0, mc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mr += resp[i * k + j] * points[i].r;
                mc += resp[i * k + j] * points[i].c;
            }
            comp.mean = {mr / mass, mc / mass};
            double sa = 0.0, sb = 0.0, sd = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dr = points[i].r - comp.mean.x;
                const double dc = points[i].c - comp.mean.y;
                const double w = resp[i * k + j];
                sa += w * dr * dr;
                sb += w * dr * dc;
                sd += w * dc * dc;
            }
            comp.covariance.a = sa / mass + options.cov_floor;
            comp.covariance.b = sb / mass;
            comp.covariance.c = comp.covariance.b;
            comp.covariance.d = sd / mass + options.cov_floor;
        }
    }
    return {std::move(model), true};
}

}  // namespace

GmmModel fit_gmm(std::span<const CompositionPoint> points, int k, std::uint64_t seed,
                 const GmmOptions& options) {
    if (k < 1) throw std::invalid_argument("fit_gmm: k must be at least 1");
    if (points.size() < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("fit_gmm: fewer points than components");
    }
    GmmModel best;
    bool have_best = false;
    for (int restart = 0; restart < options.n_init; ++restart) {
        std::vector<double>* trace = nullptr;
        if (options.ll_trace) {
            options.ll_trace->emplace_back();
            trace = &options.ll_trace->back();
        }
        const std::uint64_t rs = mix_seed(seed, static_cast<std::uint64_t>(k),
                                          static_cast<std::uint64_t>(restart));
        EmFit fit = run_em(points, k, rs, options, trace);
        if (!have_best || fit.model.log_likelihood > best.log_likelihood) {
            best = std::move(fit.model);
            have_best = true;
        }
    }
    return best;
}

Membership membership(const GmmModel& model, const CompositionPoint& x) {
    const Vec2 v = point_vec(x);
    Membership m;
    m.probabilities.resize(model.k());
    double sum = 0.0;
    for (int j = 0; j < model.k(); ++j) {
        const auto& comp = model.components[j];
        const double d = comp.weight > 0.0
                             ? comp.weight * gaussian_pdf(v, comp.mean, comp.covariance)
                             : 0.0;
        m.probabilities[j] = d;
        sum += d;
    }
    if (sum > 0.0 && std::isfinite(sum)) {
        for (double& p : m.probabilities) p /= sum;
    } else {
        std::fill(m.probabilities.begin(), m.probabilities.end(), 0.0);
        m.probabilities[nearest_mean(model, v)] = 1.0;
    }
    return m;
}

int hard_label(const GmmModel& model, const CompositionPoint& x) {
    const Membership m = membership(model, x);
    int best = 0;
    for (int j = 1; j < model.k(); ++j) {
        if (m.probabilities[j] > m.probabilities[best]) best = j;
    }
    return best;
}

double silhouette_avg(std::span<const CompositionPoint> points, std::span<const int> labels) {
    const std::size_t n = points.size();
    if (labels.size() != n) throw std::invalid_argument("silhouette_avg: label count mismatch");
    int max_label = -1;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("silhouette_avg: negative label");
        max_label = std::max(max_label, l);
    }
    const int nc = max_label + 1;
    std::vector<int> sizes(nc, 0);
    for (int l : labels) ++sizes[l];
    int occupied = 0;
    for (int s : sizes) occupied += (s > 0);
    if (occupied < 2) throw std::invalid_argument("silhouette_avg: need at least two clusters");

    double total = 0.0;
    std::vector<double> mean_dist(nc);
    for (std::size_t i = 0; i < n; ++i) {
        const int own = labels[i];
        if (sizes[own] == 1) continue;  // singleton contributes 0
        std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_dist[labels[j]] += std::sqrt(sq_dist(point_vec(points[i]), point_vec(points[j])));
        }
        const double a = mean_dist[own] / (sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int cl = 0; cl < nc; ++cl) {
            if (cl == own || sizes[cl] == 0) continue;
            b = std::min(b, mean_dist[cl] / sizes[cl]);
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

KSelection select_k(std::span<const CompositionPoint> points, int k_min, int k_max,
                    std::uint64_t seed, const GmmOptions& options) {
    if (k_min < 2 || k_min > k_max || points.size() < static_cast<std::size_t>(k_max)) {
        throw std::invalid_argument("select_k: need 2 <= k_min <= k_max <= point count");
    }
    KSelection best;
    bool have_best = false;
    std::vector<int> labels(points.size());
    for (int k = k_min; k <= k_max; ++k) {
        GmmModel model = fit_gmm(points, k, seed, options);
        for (std::size_t i = 0; i < points.size(); ++i) labels[i] = hard_label(model, points[i]);
        const bool collapsed =
            std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; });
        if (collapsed) continue;
        const double q = silhouette_avg(points, labels);
        if (!have_best || q > best.q_avg) {
            best = {k, std::move(model), q};
            have_best = true;
        }
    }
    if (!have_best) {
        throw DegenerateFitError("select_k: no candidate k produced two occupied clusters");
    }
    return best;
}

}  // namespace txrate
