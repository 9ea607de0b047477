#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "balanced/exact.hpp"
#include "balanced/generators.hpp"
#include "balanced/graph.hpp"
#include "balanced/measures.hpp"

namespace balanced {

/// phi(v) = (mu(w_1) d(w_1, v), ..., mu(w_m) d(w_m, v)) for the support
/// w_1 < ... < w_m of a balanced measure.
struct Embedding {
    std::vector<Vertex> support;
    std::vector<double> weights;
    std::optional<std::vector<Rational>> exact_weights;
    double alpha = 0.0;
    std::optional<Rational> alpha_exact;
    std::size_t rows = 0;
    std::vector<double> coords;  // rows x support.size(), row-major

    std::size_t dim() const { return support.size(); }
    std::span<const double> row(std::size_t v) const { return {coords.data() + v * dim(), dim()}; }
    double row_sum(std::size_t v) const;
};

/// Builds phi for a measure that passes is_balanced(mu, d, tol). alpha is the
/// maximal transport cost. Throws InputError for unbalanced input unless
/// `force` is set.
Embedding embed(const DistanceMatrix& d, const VertexMeasure& mu, double tol = kDefaultBalanceTol,
                bool force = false);

struct LipschitzReport {
    double max_ratio = 0.0;  // max ||phi(u) - phi(v)||_1 / d(u, v) over u != v
    std::size_t violation_count = 0;  // ratio > 1 + 1e-9
    std::pair<Vertex, Vertex> worst_pair{0, 0};
    std::size_t pairs_checked = 0;
    bool sampled = false;
};

struct LipschitzOptions {
    std::size_t full_scan_limit = 5000;  // n above this switches to sampling
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
};

LipschitzReport lipschitz_audit(const Embedding& emb, const DistanceMatrix& d,
                                const LipschitzOptions& options = {});

struct HyperplaneReport {
    double max_support_deviation = 0.0;  // max over support rows |row sum - alpha|
    bool exact = false;                  // deviation computed in rational arithmetic
    bool degenerate = false;             // single-vertex support
};

HyperplaneReport hyperplane_check(const Embedding& emb, const DistanceMatrix& d);

struct SeparationReport {
    std::vector<double> avg_linf;  // per support vertex, mean over all support w (w = v included)
    std::vector<double> avg_l1;    // same with the l1 norm
    double min_avg_linf = 0.0;
    double bound = 0.0;            // diam / (2 m)
    bool satisfied = false;        // every avg_linf >= bound - 1e-9
    double mean_avg_l1 = 0.0;
};

SeparationReport separation_check(const Embedding& emb, unsigned diameter);

/// Keeps the columns whose weight is >= threshold. Kept coordinates are not
/// rescaled; alpha becomes the largest retained row sum. Throws InputError
/// when nothing survives.
Embedding drop_small_coordinates(const Embedding& emb, double weight_threshold);

/// Keeps the k heaviest columns (ties: smaller vertex index), in ascending
/// vertex order.
Embedding keep_top_coordinates(const Embedding& emb, std::size_t k);

/// Row-wise projection onto {x : sum x = 0}.
PointCloud center_project(const PointCloud& points);
PointCloud center_project(const Embedding& emb);
PointCloud as_points(const Embedding& emb);

struct PcaResult {
    PointCloud points;
    std::vector<double> eigenvalues;       // all, descending
    std::vector<double> explained_ratio;   // retained components
};

/// Projects mean-centered points onto the top `target_dim` covariance
/// eigenvectors. Each eigenvector's largest-magnitude entry is made positive.
PcaResult pca_reduce(const PointCloud& points, std::size_t target_dim);

struct DistortionReport {
    std::size_t pairs = 0;
    std::size_t collapsed_pairs = 0;  // u != v mapped to the same point
    double median_ratio = 0.0;        // median of d(u,v) / ||phi(u) - phi(v)||_1
    double c_G = 0.0;                 // 1 / median_ratio; c_G d / ||.|| has median 1
    double in_band_fraction = 0.0;    // share with c_G d / ||.|| in [1/2, 3/2]
    std::vector<double> bin_edges;    // histogram of the scaled ratio
    std::vector<std::size_t> histogram;
};

/// All pairs when sample_pairs >= n(n-1)/2, otherwise that many seeded
/// random pairs.
DistortionReport distortion_report(const Embedding& emb, const DistanceMatrix& d,
                                   std::size_t sample_pairs, std::uint64_t seed = 0);

/// Spearman rank correlation with average ranks for ties.
double rank_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace balanced
