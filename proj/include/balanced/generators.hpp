#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "balanced/graph.hpp"

namespace balanced {

/// Points in R^dim stored row-major, plus optional per-point metadata
/// columns (cluster id for Gaussian clouds, the (t, h) chart for the roll).
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords;
    std::vector<std::string> meta_names;
    std::vector<double> meta;  // size() * meta_names.size(), row-major

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const { return {coords.data() + i * dim, dim}; }
    double meta_at(std::size_t i, std::size_t col) const { return meta[i * meta_names.size() + col]; }

    bool operator==(const PointCloud&) const = default;
};

Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_complete(std::size_t n);
Graph gen_star(std::size_t n_leaves);  // center 0, leaves 1..n_leaves
Graph gen_grid(std::size_t rows, std::size_t cols);

/// m paths of 2*ell+1 edges each, sharing both endpoints.
///
/// Vertex layout: hub_a = 0, hub_b = 1; path p owns interior vertices
/// 2 + 2*ell*p + i for i in [0, 2*ell), where i = 0 touches hub_a and
/// d(hub_a, interior i) = i + 1. Every path has two central vertices, at
/// distances ell and ell+1 from hub_a.
struct GluedPaths {
    Graph graph;
    Vertex hub_a = 0;
    Vertex hub_b = 1;
    std::vector<Vertex> midpoints;      // canonical: central vertex nearer hub_a
    std::vector<Vertex> far_midpoints;  // central vertex nearer hub_b
};
GluedPaths gen_glued_paths(std::size_t m, std::size_t ell);

/// G(n, p); disconnected draws are retried with seed+1, seed+2, ... (100 tries).
Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

PointCloud gen_gaussian_clouds(std::size_t n_per_cluster,
                               const std::vector<std::vector<double>>& centers, double stddev,
                               std::uint64_t seed);

/// Swiss roll (t cos t, h, t sin t), t = 1.5*pi*(1 + 2u), h = 21 v with u, v
/// uniform in [0, 1). Metadata columns "t" and "h".
PointCloud gen_swiss_roll(std::size_t n, std::uint64_t seed);

/// Union-symmetrized k-nearest-neighbor graph (Euclidean; ties broken by
/// smaller index). Throws InputError if the result is disconnected.
Graph knn_graph(const PointCloud& cloud, std::size_t k);

/// Bundled graphs: "frucht", "dodecahedral", "desargues", "petersen".
Graph load_named(const std::string& name);
std::vector<std::string> named_graphs();

}  // namespace balanced
