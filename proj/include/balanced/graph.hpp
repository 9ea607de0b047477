#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace balanced {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Finite, simple, unweighted, connected graph on vertices 0..n-1.
///
/// Instances are only produced by build_graph(), which normalizes the edge
/// list (dedup, symmetrize, sort) and rejects self-loops and disconnected
/// input. Immutable afterwards.
class Graph {
public:
    std::size_t size() const { return offsets_.size() - 1; }
    std::size_t edge_count() const { return targets_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const;
    bool has_edge(Vertex u, Vertex v) const;

    /// Undirected edges with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend Graph build_graph(std::span<const Edge> edges, std::size_t n);

private:
    Graph() = default;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

/// Normalizes an edge list into a Graph.
/// Throws InputError on n == 0, out-of-range endpoints, self-loops or a
/// disconnected result.
Graph build_graph(std::span<const Edge> edges, std::size_t n);

/// Dense symmetric matrix of hop distances. Row-major, 16-bit entries.
class DistanceMatrix {
public:
    using Entry = std::uint16_t;

    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<Entry> entries);

    std::size_t size() const { return n_; }
    unsigned diameter() const { return diam_; }
    Entry operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::span<const Entry> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
    std::span<const Entry> data() const { return d_; }

    bool operator==(const DistanceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    unsigned diam_ = 0;
    std::vector<Entry> d_;
};

/// Exact hop distances, one BFS per source. Rows are split across
/// `threads` workers (0 = default thread count); the result does not depend
/// on the thread count. Throws InputError if the diameter does not fit in
/// 16 bits.
DistanceMatrix all_pairs_distances(const Graph& g, unsigned threads = 0);

/// Default worker count: BALANCED_EMBED_THREADS if set, else hardware concurrency.
unsigned default_thread_count();

struct BoundarySet {
    std::vector<Vertex> members;  // ascending
    std::vector<Vertex> witness;  // witness[i] certifies members[i]
    std::vector<bool> contains;   // indicator over all vertices
};

/// Vertices u with a target v such that the average neighbor of u is strictly
/// closer to v than u is. Integer arithmetic only:
///   sum_{w ~ u} d(w, v) < deg(u) * d(u, v).
BoundarySet boundary(const Graph& g, const DistanceMatrix& d);

struct IsoperimetricReport {
    std::size_t boundary_size = 0;
    std::size_t max_degree = 0;
    unsigned diameter = 0;
    double lower_bound = 0.0;  // #V / (2 * max_degree * diam)
    bool satisfied = false;
};

IsoperimetricReport isoperimetric_report(const Graph& g, const DistanceMatrix& d,
                                         const BoundarySet& b);

// Edge-list text format: `u v` per line, `#` starts a comment, 0-indexed.
struct EdgeList {
    std::vector<Edge> edges;
    std::size_t n = 0;  // max index + 1
};
EdgeList parse_edge_list(std::istream& in);
EdgeList parse_edge_list(const std::string& text);
Graph read_edge_list_file(const std::string& path, std::size_t n = 0);
void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment = {});

}  // namespace balanced
