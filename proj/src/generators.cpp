#include "balanced/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "balanced/error.hpp"
#include "balanced/random.hpp"
#include "catalog_data.hpp"

namespace balanced {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InputError(what);
}

Vertex vx(std::size_t i) { return static_cast<Vertex>(i); }

}  // namespace

Graph gen_path(std::size_t n) {
    require(n >= 2, "path needs n >= 2");
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(vx(i), vx(i + 1));
    return build_graph(e, n);
}

Graph gen_cycle(std::size_t n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(vx(i), vx((i + 1) % n));
    return build_graph(e, n);
}

Graph gen_complete(std::size_t n) {
    require(n >= 2, "complete graph needs n >= 2");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(vx(i), vx(j));
    return build_graph(e, n);
}

Graph gen_star(std::size_t n_leaves) {
    require(n_leaves >= 1, "star needs at least one leaf");
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= n_leaves; ++i) e.emplace_back(0, vx(i));
    return build_graph(e, n_leaves + 1);
}

Graph gen_grid(std::size_t rows, std::size_t cols) {
    require(rows >= 1 && cols >= 1 && rows * cols >= 2, "grid needs at least 2 vertices");
    std::vector<Edge> e;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(vx(v), vx(v + 1));
            if (r + 1 < rows) e.emplace_back(vx(v), vx(v + cols));
        }
    }
    return build_graph(e, rows * cols);
}

GluedPaths gen_glued_paths(std::size_t m, std::size_t ell) {
    require(m >= 2, "glued paths needs m >= 2");
    require(ell >= 1, "glued paths needs ell >= 1");
    const std::size_t interior = 2 * ell;
    std::vector<Edge> e;
    std::vector<Vertex> near_a, near_b;
    for (std::size_t p = 0; p < m; ++p) {
        const std::size_t base = 2 + interior * p;
        e.emplace_back(0, vx(base));
        for (std::size_t i = 0; i + 1 < interior; ++i) e.emplace_back(vx(base + i), vx(base + i + 1));
        e.emplace_back(vx(base + interior - 1), 1);
        near_a.push_back(vx(base + ell - 1));
        near_b.push_back(vx(base + ell));
    }
    return GluedPaths{build_graph(e, 2 + interior * m), 0, 1, std::move(near_a), std::move(near_b)};
}

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    require(n >= 2, "Erdos-Renyi needs n >= 2");
    require(p > 0.0 && p <= 1.0, "Erdos-Renyi needs 0 < p <= 1");
    constexpr int kAttempts = 100;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<Edge> e;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.uniform01() < p) e.emplace_back(vx(i), vx(j));
        try {
            return build_graph(e, n);
        } catch (const InputError&) {
            // disconnected draw; next seed
        }
    }
    throw InputError("Erdos-Renyi: no connected sample in 100 attempts");
}

PointCloud gen_gaussian_clouds(std::size_t n_per_cluster,
                               const std::vector<std::vector<double>>& centers, double stddev,
                               std::uint64_t seed) {
    require(!centers.empty(), "need at least one center");
    require(stddev > 0.0, "stddev must be positive");
    const std::size_t dim = centers.front().size();
    require(dim > 0, "centers must have positive dimension");
    for (const auto& c : centers) require(c.size() == dim, "centers differ in dimension");

    PointCloud cloud;
    cloud.dim = dim;
    cloud.meta_names = {"cluster"};
    Rng rng(seed);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < n_per_cluster; ++i) {
            for (std::size_t j = 0; j < dim; ++j) cloud.coords.push_back(rng.normal(centers[c][j], stddev));
            cloud.meta.push_back(static_cast<double>(c));
        }
    }
    return cloud;
}

PointCloud gen_swiss_roll(std::size_t n, std::uint64_t seed) {
    require(n >= 10, "swiss roll needs n >= 10");
    PointCloud cloud;
    cloud.dim = 3;
    cloud.meta_names = {"t", "h"};
    cloud.coords.reserve(3 * n);
    cloud.meta.reserve(2 * n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        double t = 1.5 * std::numbers::pi * (1.0 + 2.0 * rng.uniform01());
        double h = 21.0 * rng.uniform01();
        cloud.coords.insert(cloud.coords.end(), {t * std::cos(t), h, t * std::sin(t)});
        cloud.meta.insert(cloud.meta.end(), {t, h});
    }
    return cloud;
}

Graph knn_graph(const PointCloud& cloud, std::size_t k) {
    const std::size_t n = cloud.size();
    require(k >= 1, "k must be at least 1");
    require(k < n, "k must be smaller than the number of points");

    std::vector<Edge> e;
    e.reserve(n * k);
    std::vector<std::pair<double, Vertex>> cand(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto pi = cloud.point(i);
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            auto pj = cloud.point(j);
            double d2 = 0.0;
            for (std::size_t t = 0; t < cloud.dim; ++t) {
                double diff = pi[t] - pj[t];
                d2 += diff * diff;
            }
            cand[c++] = {d2, vx(j)};
        }
        // pair ordering = (distance, index): ties go to the smaller index
        std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k - 1), cand.end());
        for (std::size_t r = 0; r < k; ++r) e.emplace_back(vx(i), cand[r].second);
    }
    try {
        return build_graph(e, n);
    } catch (const InputError& err) {
        throw InputError(std::string("k-NN graph: ") + err.what() + "; increase k");
    }
}

Graph load_named(const std::string& name) {
    auto text = detail::catalog_text(name);
    if (!text) throw InputError("unknown named graph '" + name + "'");
    EdgeList list = parse_edge_list(std::string(*text));
    return build_graph(list.edges, list.n);
}

std::vector<std::string> named_graphs() { return detail::catalog_names(); }

}  // namespace balanced
