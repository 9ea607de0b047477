#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "balanced/error.hpp"
#include "balanced/generators.hpp"
#include "balanced/measures.hpp"
#include "balanced/random.hpp"

using namespace balanced;

namespace {

VertexMeasure exact(std::initializer_list<std::pair<long, long>> w) {
    std::vector<Rational> q;
    for (auto [p, d] : w) q.push_back(make_rational(p, d));
    return VertexMeasure::from_rationals(q);
}

const DistanceMatrix& p3() {
    static const DistanceMatrix d = all_pairs_distances(gen_path(3));
    return d;
}

}  // namespace

TEST_CASE("measure construction") {
    CHECK_THROWS_AS(VertexMeasure::from_doubles({0.5, 0.4}), InputError);
    CHECK_THROWS_AS(VertexMeasure::from_doubles({1.5, -0.5}), InputError);
    CHECK_THROWS_AS(exact({{1, 2}, {1, 3}}), InputError);
    auto mu = exact({{1, 2}, {0, 1}, {1, 2}});
    CHECK(mu.is_exact());
    CHECK(mu.support() == std::vector<Vertex>{0, 2});
    CHECK(VertexMeasure::uniform(3).exact()[1] == make_rational(1, 3));
    CHECK(VertexMeasure::dirac(4, 2).support() == std::vector<Vertex>{2});
}

TEST_CASE("transport costs") {
    auto t = transport_costs_exact(exact({{1, 2}, {0, 1}, {1, 2}}), p3());
    CHECK(t == std::vector<Rational>{1, 1, 1});

    Graph g = load_named("petersen");
    auto d = all_pairs_distances(g);
    auto td = transport_costs(VertexMeasure::dirac(10, 3), d);
    for (std::size_t v = 0; v < 10; ++v) CHECK(td[v] == d(3, v));

    auto ds = all_pairs_distances(gen_star(3));
    auto ts = transport_costs_exact(VertexMeasure::uniform_on(4, {1, 2, 3}), ds);
    CHECK(ts[0] == 1);
    CHECK(ts[1] == make_rational(4, 3));
}

TEST_CASE("energy") {
    CHECK(energy_quadratic(VertexMeasure::dirac(3, 1), p3()) == 0.0);
    CHECK(energy_quadratic_exact(exact({{1, 2}, {0, 1}, {1, 2}}), p3()) == 1);
    for (std::size_t n : {3, 5, 8}) {
        auto d = all_pairs_distances(gen_complete(n));
        CHECK(energy_quadratic_exact(VertexMeasure::uniform(n), d) == make_rational(n - 1, n));
    }
    // double and exact paths agree
    auto mu = VertexMeasure::from_doubles({0.25, 0.5, 0.25});
    CHECK(energy_quadratic(mu, p3()) == doctest::Approx(0.75));
}

TEST_CASE("balance check") {
    auto r = is_balanced(exact({{1, 2}, {0, 1}, {1, 2}}), p3());
    CHECK(r.is_balanced);
    CHECK(r.exact);
    CHECK(*r.max_T_exact == 1);

    auto u = is_balanced(VertexMeasure::uniform(3), p3());
    CHECK_FALSE(u.is_balanced);
    CHECK(*u.support_T_spread_exact == make_rational(1, 3));
    CHECK(u.argmax_set == std::vector<Vertex>{0, 2});

    // inexact path with tolerance
    auto f = is_balanced(VertexMeasure::from_doubles({0.5 + 1e-12, 0.0, 0.5 - 1e-12}), p3(), 1e-9);
    CHECK(f.is_balanced);
    CHECK_FALSE(f.exact);

    for (const char* name : {"dodecahedral", "desargues", "petersen"}) {
        auto d = all_pairs_distances(load_named(name));
        auto b = is_balanced(VertexMeasure::uniform(d.size()), d);
        CHECK_MESSAGE(b.is_balanced, name);
        CHECK(b.exact);
        CHECK(b.argmax_set.size() == d.size());
    }
}

TEST_CASE("directional derivative") {
    auto half = exact({{1, 2}, {0, 1}, {1, 2}});
    CHECK(directional_derivative(half, {0.0, 0.0, 0.0}, p3()) == 0.0);
    CHECK(directional_derivative(half, {-1.0, 1.0, 0.0}, p3()) == doctest::Approx(0.0));
    auto uni = VertexMeasure::uniform(3);
    CHECK(directional_derivative(uni, {1.0, -1.0, 0.0}, p3()) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(directional_derivative(half, {0.0, -1.0, 1.0}, p3()), InputError);
    CHECK_THROWS_AS(directional_derivative(half, {1.0, 0.0, 0.0}, p3()), InputError);
}

TEST_CASE("support extraction") {
    CHECK(extract_support(VertexMeasure::from_doubles({0.5, 0, 0, 0, 0.5}), 0.01) == std::vector<Vertex>{0, 4});
    CHECK_THROWS_AS(extract_support(VertexMeasure::uniform(4), 0.3), InputError);
    CHECK(extract_support(VertexMeasure::from_doubles({0.999, 0.001}), 0.01) == std::vector<Vertex>{0});
    CHECK(default_support_threshold(10) == doctest::Approx(0.05));
    CHECK(default_support_threshold(10000) == doctest::Approx(1e-3));
}

TEST_CASE("refinement") {
    auto r = refine_on_support(p3(), {0, 2});
    REQUIRE(r.ok());
    CHECK(r.measure->exact() == std::vector<Rational>{make_rational(1, 2), 0, make_rational(1, 2)});
    CHECK(*r.level == 1);

    auto ds = all_pairs_distances(gen_star(3));
    auto s = refine_on_support(ds, {1, 2, 3});
    REQUIRE(s.ok());
    CHECK(s.measure->exact()[1] == make_rational(1, 3));
    CHECK(*s.level == make_rational(4, 3));

    auto bad = refine_on_support(p3(), {0, 1});
    CHECK(bad.status == RefineStatus::off_support_violation);
    CHECK_FALSE(bad.measure);

    // all of K_{1,3}: the center gets -1/2
    auto neg = refine_on_support(ds, {0, 1, 2, 3});
    CHECK(neg.status == RefineStatus::negative_weight);
    CHECK(*neg.level == make_rational(3, 2));
    // P_5 on {0, 2, 4}: vertex 2 gets weight 0, which is allowed
    auto d5 = all_pairs_distances(gen_path(5));
    auto z = refine_on_support(d5, {0, 2, 4});
    REQUIRE(z.ok());
    CHECK(z.measure->support() == std::vector<Vertex>{0, 4});
    // C_4 on all vertices: D has rank 2, the system is singular
    auto dc = all_pairs_distances(gen_cycle(4));
    CHECK(refine_on_support(dc, {0, 1, 2, 3}).status == RefineStatus::singular_system);
}

TEST_CASE("balancing on a vertex subset") {
    auto r = balance_on_subset(p3(), {1, 0, 2});
    REQUIRE(r.ok());
    CHECK(r.measure->exact() == std::vector<Rational>{make_rational(1, 2), 0, make_rational(1, 2)});
    CHECK(*r.level == 1);

    // only {0, 1} is seen; vertex 2 then costs 3/2
    auto part = balance_on_subset(p3(), {0, 1});
    CHECK(part.measure->support() == std::vector<Vertex>{0, 1});
    CHECK(*part.level == make_rational(1, 2));
    CHECK_FALSE(is_balanced(*part.measure, p3()).is_balanced);

    auto ds = all_pairs_distances(gen_star(3));
    auto s = balance_on_subset(ds, {0, 1, 2, 3});
    CHECK(s.measure->support() == std::vector<Vertex>{1, 2, 3});
    CHECK(*s.level == make_rational(4, 3));

    // degenerate ties: C_4 and C_6 on all vertices
    for (std::size_t n : {4, 6}) {
        auto dc = all_pairs_distances(gen_cycle(n));
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        auto c = balance_on_subset(dc, all);
        auto rep = is_balanced(*c.measure, dc);
        CHECK(rep.is_balanced);
        CHECK(rep.exact);
        CHECK(*rep.max_T_exact == *c.level);
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto d = all_pairs_distances(gen_erdos_renyi(30, 0.15, seed));
        std::vector<Vertex> all(30);
        std::iota(all.begin(), all.end(), 0);
        std::reverse(all.begin(), all.end());
        auto c = balance_on_subset(d, all);
        CHECK_MESSAGE(is_balanced(*c.measure, d).is_balanced, seed);
    }
    CHECK_THROWS_AS(balance_on_subset(p3(), {0, 0}), InputError);
    CHECK_THROWS_AS(balance_on_subset(p3(), {}), InputError);
}

TEST_CASE("supports oracle") {
    auto p = brute_force_balanced(p3(), SupportsMode{2});
    REQUIRE(p.size() == 1);
    CHECK(p[0].measure.support() == std::vector<Vertex>{0, 2});
    CHECK(p[0].energy == 1);

    auto k3 = brute_force_balanced(all_pairs_distances(gen_complete(3)), SupportsMode{3});
    REQUIRE(k3.size() == 1);
    CHECK(k3[0].measure.exact() == VertexMeasure::uniform(3).exact());
}

TEST_CASE("Frucht graph carries the 1/10, 2/10, 3/10, 4/10 measure") {
    auto d = all_pairs_distances(load_named("frucht"));
    auto found = brute_force_balanced(d, SupportsMode{4});
    const std::vector<Rational> want{make_rational(1, 10), make_rational(2, 10), make_rational(3, 10),
                                     make_rational(4, 10)};
    bool hit = false;
    for (const auto& om : found) {
        std::vector<Rational> w;
        for (Vertex v : om.measure.support()) w.push_back(om.measure.exact()[v]);
        std::sort(w.begin(), w.end());
        if (w != want) continue;
        auto r = is_balanced(om.measure, d);
        CHECK(r.is_balanced);
        CHECK(r.argmax_set.size() == 6);
        hit = true;
    }
    CHECK(hit);
}

TEST_CASE("grid oracle") {
    auto d8 = all_pairs_distances(gen_complete(8));
    auto best = brute_force_balanced(d8, GridMode{40});
    REQUIRE(best.size() == 1);
    CHECK(best[0].measure.exact() == VertexMeasure::uniform(8).exact());
    CHECK(best[0].energy == make_rational(7, 8));

    // P_3 at resolution 4: maximizer (1/2, 0, 1/2)
    auto p = brute_force_balanced(p3(), GridMode{4});
    REQUIRE(p.size() == 1);
    CHECK(p[0].measure.support() == std::vector<Vertex>{0, 2});

    CHECK_THROWS_AS(brute_force_balanced(all_pairs_distances(gen_path(9)), GridMode{10}), InputError);
    CHECK_THROWS_AS(brute_force_balanced(p3(), GridMode{41}), InputError);
}

TEST_CASE("oracle measures are critical points") {
    // J at a balanced measure equals its common level, and moving mass from
    // the support anywhere never increases J to first order.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto d = all_pairs_distances(gen_erdos_renyi(9, 0.35, seed));
        for (const auto& om : brute_force_balanced(d, SupportsMode{3})) {
            auto r = is_balanced(om.measure, d);
            REQUIRE(r.is_balanced);
            CHECK(om.energy == *r.max_T_exact);
            for (Vertex w : r.support) {
                for (std::size_t v = 0; v < d.size(); ++v) {
                    std::vector<double> nu(d.size(), 0.0);
                    nu[w] -= 1.0;
                    nu[v] += 1.0;
                    CHECK(directional_derivative(om.measure, nu, d) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("random measures reach half the diameter") {
    Rng rng(11);
    for (const char* name : {"frucht", "petersen"}) {
        auto d = all_pairs_distances(load_named(name));
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> w(d.size());
            double s = 0;
            for (auto& x : w) s += (x = rng.exponential());
            for (auto& x : w) x /= s;
            auto t = transport_costs(VertexMeasure::from_doubles(w), d);
            CHECK(*std::max_element(t.begin(), t.end()) >= d.diameter() / 2.0 - 1e-12);
        }
    }
}
