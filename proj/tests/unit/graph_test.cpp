#include <doctest.h>

#include <sstream>

#include "balanced/error.hpp"
#include "balanced/generators.hpp"
#include "balanced/graph.hpp"
#include "support/fixtures.hpp"

using namespace balanced;
using balanced::testing::graph_from;

namespace {

// Floyd-Warshall, independent of the BFS implementation.
std::vector<unsigned> floyd(const Graph& g) {
    const std::size_t n = g.size();
    const unsigned inf = 1u << 30;
    std::vector<unsigned> d(n * n, inf);
    for (std::size_t v = 0; v < n; ++v) {
        d[v * n + v] = 0;
        for (Vertex w : g.neighbors(static_cast<Vertex>(v))) d[v * n + w] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    return d;
}

}  // namespace

TEST_CASE("build_graph normalizes and validates") {
    Graph p3 = graph_from({{0, 1}, {1, 2}}, 3);
    CHECK(p3.size() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.degree(1) == 2);
    CHECK(p3.has_edge(2, 1));
    CHECK_FALSE(p3.has_edge(0, 2));

    Graph e = graph_from({{0, 1}, {1, 0}}, 2);
    CHECK(e.edge_count() == 1);

    CHECK_THROWS_AS(graph_from({{0, 1}}, 3), InputError);
    CHECK_THROWS_AS(graph_from({{0, 0}, {0, 1}}, 2), InputError);
    CHECK_THROWS_AS(graph_from({{0, 5}}, 2), InputError);
    CHECK_THROWS_AS(graph_from({}, 0), InputError);
    CHECK(graph_from({}, 1).size() == 1);
}

TEST_CASE("all-pairs distances on small graphs") {
    auto d3 = all_pairs_distances(gen_path(3));
    CHECK(d3(0, 2) == 2);
    CHECK(d3.diameter() == 2);

    auto dk = all_pairs_distances(gen_complete(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(dk(i, j) == (i == j ? 0 : 1));
    CHECK(dk.diameter() == 1);

    auto dc = all_pairs_distances(gen_cycle(4));
    CHECK(dc(0, 2) == 2);
    CHECK(dc(0, 1) == 1);
    CHECK(dc.diameter() == 2);

    CHECK(all_pairs_distances(graph_from({}, 1)).diameter() == 0);
}

TEST_CASE("distances match Floyd-Warshall and ignore the thread count") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Graph g = gen_erdos_renyi(60, 0.08, seed);
        auto ref = floyd(g);
        auto d1 = all_pairs_distances(g, 1);
        auto d3 = all_pairs_distances(g, 3);
        CHECK(d1 == d3);
        bool same = true;
        for (std::size_t i = 0; i < g.size() * g.size(); ++i) same &= d1.data()[i] == ref[i];
        CHECK(same);
    }
}

TEST_CASE("boundary examples") {
    {
        Graph g = gen_path(3);
        auto b = boundary(g, all_pairs_distances(g));
        CHECK(b.members == std::vector<Vertex>{0, 2});
        CHECK_FALSE(b.contains[1]);
    }
    for (std::size_t n : {2, 4, 6}) {
        Graph g = gen_complete(n);
        CHECK(boundary(g, all_pairs_distances(g)).members.size() == n);
    }
    {
        Graph g = gen_cycle(4);
        CHECK(boundary(g, all_pairs_distances(g)).members.size() == 4);
    }
}

TEST_CASE("boundary witnesses certify membership") {
    Graph g = load_named("frucht");
    auto d = all_pairs_distances(g);
    auto b = boundary(g, d);
    REQUIRE(b.members.size() == b.witness.size());
    for (std::size_t i = 0; i < b.members.size(); ++i) {
        Vertex u = b.members[i], v = b.witness[i];
        long sum = 0;
        for (Vertex w : g.neighbors(u)) sum += d(w, v);
        CHECK(sum < static_cast<long>(g.degree(u)) * d(u, v));
    }
}

TEST_CASE("isoperimetric report") {
    {
        Graph g = gen_path(3);
        auto d = all_pairs_distances(g);
        auto r = isoperimetric_report(g, d, boundary(g, d));
        CHECK(r.boundary_size == 2);
        CHECK(r.lower_bound == doctest::Approx(3.0 / 8.0));
        CHECK(r.satisfied);
    }
    {
        Graph g = gen_complete(4);
        auto d = all_pairs_distances(g);
        auto r = isoperimetric_report(g, d, boundary(g, d));
        CHECK(r.boundary_size == 4);
        CHECK(r.lower_bound == doctest::Approx(4.0 / 6.0));
        CHECK(r.satisfied);
    }
    for (auto& f : balanced::testing::standard_fixtures(5)) {
        auto d = all_pairs_distances(f.graph);
        CHECK_MESSAGE(isoperimetric_report(f.graph, d, boundary(f.graph, d)).satisfied, f.name);
    }
}

TEST_CASE("edge-list parsing and round trip") {
    auto list = parse_edge_list("# comment\n0 1\n\n1 2  # trailing\n");
    CHECK(list.n == 3);
    CHECK(list.edges.size() == 2);
    CHECK_THROWS_AS(parse_edge_list("0\n"), InputError);
    CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), InputError);
    CHECK_THROWS_AS(parse_edge_list("0 x\n"), InputError);

    Graph g = load_named("petersen");
    std::ostringstream out;
    write_edge_list(out, g, "petersen");
    auto back = parse_edge_list(out.str());
    Graph h = build_graph(back.edges, back.n);
    CHECK(h.edges() == g.edges());
}
