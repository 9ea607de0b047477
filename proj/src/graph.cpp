#include "balanced/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "balanced/error.hpp"

namespace balanced {

Graph build_graph(std::span<const Edge> edges, std::size_t n) {
    if (n == 0) throw InputError("graph must have at least one vertex");
    if (n > std::numeric_limits<Vertex>::max()) throw InputError("too many vertices");

    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") out of range for n = " + std::to_string(n));
        }
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) g.targets_.push_back(v);

    // one traversal decides connectivity
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != n) {
        throw InputError("graph is disconnected (" + std::to_string(reached) + " of " +
                         std::to_string(n) + " vertices reachable from 0)");
    }
    return g;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < size(); ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<Entry> entries)
    : n_(n), d_(std::move(entries)) {
    if (d_.size() != n * n) throw InputError("distance matrix has wrong size");
    diam_ = d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end());
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("BALANCED_EMBED_THREADS")) {
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
        if (ec == std::errc() && value > 0) return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr unsigned kUnreached = std::numeric_limits<DistanceMatrix::Entry>::max();

// BFS from `source` writing into `row`; returns the eccentricity, or
// kUnreached if some level would not fit in an Entry.
unsigned bfs_row(const Graph& g, Vertex source, std::span<DistanceMatrix::Entry> row,
                 std::vector<Vertex>& queue) {
    std::fill(row.begin(), row.end(), static_cast<DistanceMatrix::Entry>(kUnreached));
    queue.clear();
    queue.push_back(source);
    row[source] = 0;
    unsigned ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        unsigned next = row[u] + 1u;
        if (next >= kUnreached) return kUnreached;
        for (Vertex w : g.neighbors(u)) {
            if (row[w] == kUnreached) {
                row[w] = static_cast<DistanceMatrix::Entry>(next);
                ecc = next;
                queue.push_back(w);
            }
        }
    }
    return ecc;
}

}  // namespace

DistanceMatrix all_pairs_distances(const Graph& g, unsigned threads) {
    const std::size_t n = g.size();
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    std::vector<DistanceMatrix::Entry> d(n * n);
    std::vector<unsigned> worker_ecc(threads, 0);

    auto work = [&](unsigned t) {
        std::vector<Vertex> queue;
        queue.reserve(n);
        unsigned ecc = 0;
        // strided rows; every row is written by exactly one worker
        for (std::size_t s = t; s < n; s += threads) {
            std::span<DistanceMatrix::Entry> row(d.data() + s * n, n);
            unsigned e = bfs_row(g, static_cast<Vertex>(s), row, queue);
            ecc = std::max(ecc, e);
            if (e == kUnreached) break;
        }
        worker_ecc[t] = ecc;
    };

    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    if (*std::max_element(worker_ecc.begin(), worker_ecc.end()) == kUnreached)
        throw InputError("graph diameter exceeds 65534");
    return DistanceMatrix(n, std::move(d));
}

BoundarySet boundary(const Graph& g, const DistanceMatrix& d) {
    const std::size_t n = g.size();
    BoundarySet b;
    b.contains.assign(n, false);
    std::vector<std::uint64_t> neighbor_sum(n);
    for (Vertex u = 0; u < n; ++u) {
        std::fill(neighbor_sum.begin(), neighbor_sum.end(), 0);
        for (Vertex w : g.neighbors(u)) {
            auto row = d.row(w);
            for (std::size_t v = 0; v < n; ++v) neighbor_sum[v] += row[v];
        }
        const std::uint64_t deg = g.degree(u);
        auto own = d.row(u);
        for (std::size_t v = 0; v < n; ++v) {
            if (neighbor_sum[v] < deg * own[v]) {
                b.members.push_back(u);
                b.witness.push_back(static_cast<Vertex>(v));
                b.contains[u] = true;
                break;
            }
        }
    }
    return b;
}

IsoperimetricReport isoperimetric_report(const Graph& g, const DistanceMatrix& d,
                                         const BoundarySet& b) {
    IsoperimetricReport r;
    r.boundary_size = b.members.size();
    r.max_degree = g.max_degree();
    r.diameter = d.diameter();
    if (g.size() == 1) {
        r.satisfied = true;
        return r;
    }
    r.lower_bound = static_cast<double>(g.size()) /
                    (2.0 * static_cast<double>(r.max_degree) * r.diameter);
    // exact: #B * 2 * Delta * diam >= #V
    r.satisfied = static_cast<std::uint64_t>(r.boundary_size) * 2 * r.max_degree * r.diameter >=
                  g.size();
    return r;
}

EdgeList parse_edge_list(std::istream& in) {
    EdgeList out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long u = 0, v = 0;
        if (!(fields >> u)) continue;  // blank line
        if (!(fields >> v) || u < 0 || v < 0) {
            throw InputError("edge list line " + std::to_string(lineno) + ": expected `u v`");
        }
        std::string extra;
        if (fields >> extra) {
            throw InputError("edge list line " + std::to_string(lineno) + ": trailing data");
        }
        if (u > std::numeric_limits<Vertex>::max() - 1 || v > std::numeric_limits<Vertex>::max() - 1)
            throw InputError("edge list line " + std::to_string(lineno) + ": index too large");
        out.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        out.n = std::max<std::size_t>(out.n, static_cast<std::size_t>(std::max(u, v)) + 1);
    }
    return out;
}

EdgeList parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Graph read_edge_list_file(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open edge list '" + path + "'");
    EdgeList list = parse_edge_list(in);
    if (n != 0 && n < list.n) throw InputError("vertex count smaller than max index + 1");
    return build_graph(list.edges, n != 0 ? n : list.n);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "# n=" << g.size() << " m=" << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace balanced
