#include "balanced/embedding.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "balanced/error.hpp"
#include "balanced/random.hpp"

namespace balanced {

namespace {

constexpr double kLipschitzSlack = 1e-9;

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
    return s;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s = std::max(s, std::abs(a[j] - b[j]));
    return s;
}

// Same layout, different column subset.
Embedding select_columns(const Embedding& emb, const std::vector<std::size_t>& cols) {
    if (cols.empty()) throw InputError("all coordinates dropped");
    Embedding out;
    out.rows = emb.rows;
    for (std::size_t c : cols) {
        out.support.push_back(emb.support[c]);
        out.weights.push_back(emb.weights[c]);
    }
    if (emb.exact_weights) {
        out.exact_weights.emplace();
        for (std::size_t c : cols) out.exact_weights->push_back((*emb.exact_weights)[c]);
    }
    out.coords.reserve(emb.rows * cols.size());
    for (std::size_t v = 0; v < emb.rows; ++v) {
        auto r = emb.row(v);
        for (std::size_t c : cols) out.coords.push_back(r[c]);
    }
    out.alpha = 0.0;
    for (std::size_t v = 0; v < out.rows; ++v) out.alpha = std::max(out.alpha, out.row_sum(v));
    return out;
}

}  // namespace

double Embedding::row_sum(std::size_t v) const {
    auto r = row(v);
    return std::accumulate(r.begin(), r.end(), 0.0);
}

Embedding embed(const DistanceMatrix& d, const VertexMeasure& mu, double tol, bool force) {
    BalanceReport br = is_balanced(mu, d, tol);
    if (!br.is_balanced && !force) {
        throw InputError("measure is not balanced (support transport-cost spread " +
                         std::to_string(br.support_T_spread) + "); embedding guarantees would not hold");
    }
    Embedding emb;
    emb.support = mu.support();
    if (emb.support.empty()) throw InputError("measure has empty support");
    emb.rows = d.size();
    for (Vertex w : emb.support) emb.weights.push_back(mu[w]);
    if (mu.is_exact()) {
        emb.exact_weights.emplace();
        for (Vertex w : emb.support) emb.exact_weights->push_back(mu.exact()[w]);
        emb.alpha_exact = br.max_T_exact;
    }
    emb.alpha = br.max_T;

    const std::size_t m = emb.dim();
    emb.coords.resize(emb.rows * m);
    for (std::size_t j = 0; j < m; ++j) {
        auto dist = d.row(emb.support[j]);
        const double w = emb.weights[j];
        for (std::size_t v = 0; v < emb.rows; ++v) emb.coords[v * m + j] = w * dist[v];
    }
    return emb;
}

LipschitzReport lipschitz_audit(const Embedding& emb, const DistanceMatrix& d,
                                const LipschitzOptions& options) {
    LipschitzReport r;
    const std::size_t n = emb.rows;
    auto visit = [&](std::size_t u, std::size_t v) {
        const double ratio = l1_distance(emb.row(u), emb.row(v)) / d(u, v);
        ++r.pairs_checked;
        if (ratio > 1.0 + kLipschitzSlack) ++r.violation_count;
        if (ratio > r.max_ratio) {
            r.max_ratio = ratio;
            r.worst_pair = {static_cast<Vertex>(u), static_cast<Vertex>(v)};
        }
    };
    if (n <= options.full_scan_limit) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) visit(u, v);
    } else {
        r.sampled = true;
        Rng rng(options.seed);
        for (std::size_t i = 0; i < options.samples; ++i) {
            std::size_t u = rng.below(n), v = rng.below(n - 1);
            if (v >= u) ++v;
            visit(std::min(u, v), std::max(u, v));
        }
    }
    return r;
}

HyperplaneReport hyperplane_check(const Embedding& emb, const DistanceMatrix& d) {
    HyperplaneReport r;
    r.degenerate = emb.dim() == 1;
    if (emb.exact_weights && emb.alpha_exact) {
        r.exact = true;
        Rational worst = 0;
        for (Vertex v : emb.support) {
            Rational s = 0;
            for (std::size_t j = 0; j < emb.dim(); ++j) s += (*emb.exact_weights)[j] * d(emb.support[j], v);
            Rational dev = abs(s - *emb.alpha_exact);
            if (dev > worst) worst = dev;
        }
        r.max_support_deviation = worst.get_d();
        return r;
    }
    for (Vertex v : emb.support)
        r.max_support_deviation = std::max(r.max_support_deviation, std::abs(emb.row_sum(v) - emb.alpha));
    return r;
}

SeparationReport separation_check(const Embedding& emb, unsigned diameter) {
    SeparationReport r;
    const std::size_t m = emb.dim();
    r.bound = static_cast<double>(diameter) / (2.0 * static_cast<double>(m));
    r.min_avg_linf = std::numeric_limits<double>::infinity();
    double total_l1 = 0.0;
    for (Vertex v : emb.support) {
        double linf = 0.0, l1 = 0.0;
        for (Vertex w : emb.support) {
            linf += linf_distance(emb.row(v), emb.row(w));
            l1 += l1_distance(emb.row(v), emb.row(w));
        }
        r.avg_linf.push_back(linf / static_cast<double>(m));
        r.avg_l1.push_back(l1 / static_cast<double>(m));
        r.min_avg_linf = std::min(r.min_avg_linf, r.avg_linf.back());
        total_l1 += r.avg_l1.back();
    }
    r.mean_avg_l1 = total_l1 / static_cast<double>(m);
    r.satisfied = r.min_avg_linf >= r.bound - 1e-9;
    return r;
}

Embedding drop_small_coordinates(const Embedding& emb, double weight_threshold) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < emb.dim(); ++j)
        if (emb.weights[j] >= weight_threshold) cols.push_back(j);
    if (cols.size() == emb.dim()) return emb;
    return select_columns(emb, cols);
}

Embedding keep_top_coordinates(const Embedding& emb, std::size_t k) {
    if (k == 0) throw InputError("all coordinates dropped");
    std::vector<std::size_t> order(emb.dim());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return emb.weights[a] > emb.weights[b]; });
    order.resize(std::min(k, order.size()));
    std::sort(order.begin(), order.end());
    if (order.size() == emb.dim()) return emb;
    return select_columns(emb, order);
}

PointCloud as_points(const Embedding& emb) {
    PointCloud p;
    p.dim = emb.dim();
    p.coords = emb.coords;
    return p;
}

PointCloud center_project(const PointCloud& points) {
    PointCloud out = points;
    const std::size_t m = points.dim;
    for (std::size_t v = 0; v < points.size(); ++v) {
        double* r = out.coords.data() + v * m;
        const double mean = std::accumulate(r, r + m, 0.0) / static_cast<double>(m);
        for (std::size_t j = 0; j < m; ++j) r[j] -= mean;
    }
    return out;
}

PointCloud center_project(const Embedding& emb) { return center_project(as_points(emb)); }

PcaResult pca_reduce(const PointCloud& points, std::size_t target_dim) {
    const std::size_t n = points.size(), m = points.dim;
    if (target_dim > m) throw InputError("target dimension exceeds point dimension");
    if (target_dim == 0) throw InputError("target dimension must be positive");
    if (n == 0) throw InputError("no points");

    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMatrix> x(points.coords.data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(m));
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - mean;
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(std::max<std::size_t>(1, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);

    // Eigen returns ascending eigenvalues
    PcaResult r;
    const Eigen::Index dim = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd basis(dim, static_cast<Eigen::Index>(target_dim));
    for (Eigen::Index i = 0; i < dim; ++i) r.eigenvalues.push_back(std::max(0.0, solver.eigenvalues()(dim - 1 - i)));
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(target_dim); ++c) {
        Eigen::VectorXd vec = solver.eigenvectors().col(dim - 1 - c);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < dim; ++i)
            if (std::abs(vec(i)) > std::abs(vec(arg)) + 1e-12) arg = i;
        if (vec(arg) < 0) vec = -vec;
        basis.col(c) = vec;
    }
    const double total = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 0.0);
    for (std::size_t c = 0; c < target_dim; ++c)
        r.explained_ratio.push_back(total > 0.0 ? r.eigenvalues[c] / total : 0.0);

    const RowMatrix projected = centered * basis;
    r.points.dim = target_dim;
    r.points.coords.assign(projected.data(), projected.data() + projected.size());
    r.points.meta_names = points.meta_names;
    r.points.meta = points.meta;
    return r;
}

DistortionReport distortion_report(const Embedding& emb, const DistanceMatrix& d,
                                   std::size_t sample_pairs, std::uint64_t seed) {
    if (sample_pairs == 0) throw InputError("sample_pairs must be positive");
    const std::size_t n = emb.rows;
    DistortionReport r;
    std::vector<double> ratios;

    auto visit = [&](std::size_t u, std::size_t v) {
        ++r.pairs;
        const double dist = l1_distance(emb.row(u), emb.row(v));
        if (dist == 0.0) {
            ++r.collapsed_pairs;
            return;
        }
        ratios.push_back(d(u, v) / dist);
    };
    const std::size_t all_pairs = n * (n - 1) / 2;
    if (sample_pairs >= all_pairs) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) visit(u, v);
    } else {
        Rng rng(seed);
        for (std::size_t i = 0; i < sample_pairs; ++i) {
            std::size_t u = rng.below(n), v = rng.below(n - 1);
            if (v >= u) ++v;
            visit(u, v);
        }
    }

    r.bin_edges.resize(17);
    for (std::size_t i = 0; i < r.bin_edges.size(); ++i) r.bin_edges[i] = 0.25 * static_cast<double>(i);
    r.histogram.assign(r.bin_edges.size(), 0);  // last bin: >= 4
    if (ratios.empty()) return r;

    std::vector<double> sorted = ratios;
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    double median = sorted[mid];
    if (sorted.size() % 2 == 0) {
        median = 0.5 * (median + *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    r.median_ratio = median;
    r.c_G = 1.0 / median;

    std::size_t in_band = 0;
    for (double ratio : ratios) {
        const double scaled = r.c_G * ratio;
        if (scaled >= 0.5 - 1e-12 && scaled <= 1.5 + 1e-12) ++in_band;
        const auto bin = static_cast<std::size_t>(std::min(16.0, std::floor(scaled / 0.25)));
        ++r.histogram[bin];
    }
    r.in_band_fraction = static_cast<double>(in_band) / static_cast<double>(r.pairs);
    return r;
}

double rank_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("rank correlation needs two equal-length samples");
    auto ranks = [](std::span<const double> v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rk(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j);
            for (std::size_t t = i; t <= j; ++t) rk[idx[t]] = avg;
            i = j + 1;
        }
        return rk;
    };
    auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace balanced
