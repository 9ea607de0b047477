#include <doctest.h>

#include <algorithm>

#include "balanced/document.hpp"
#include "balanced/error.hpp"
#include "balanced/generators.hpp"
#include "balanced/pipeline.hpp"

using namespace balanced;

namespace {

std::vector<Vertex> entry_vertices(const std::vector<MeasureEntry>& entries) {
    std::vector<Vertex> out;
    for (const auto& e : entries) out.push_back(e.vertex);
    return out;
}

}  // namespace

TEST_CASE("greedy command on P_3") {
    auto doc = cmd_greedy(gen_path(3), "P_3", GreedyConfig{});
    REQUIRE(doc.measure);
    CHECK(doc.measure->origin == "refined");
    CHECK(entry_vertices(doc.measure->entries) == std::vector<Vertex>{0, 2});
    CHECK(doc.measure->entries[0].exact == "1/2");
    CHECK(doc.measure->level == "1");
    CHECK(doc.balance->is_balanced);
    CHECK(doc.balance->max_T_exact == "1");
    CHECK(doc.convergence->alpha_estimate == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(doc.boundary->members == std::vector<Vertex>{0, 2});
    CHECK(doc.graph.diameter == 2);
    CHECK(doc.warnings.empty());
}

TEST_CASE("greedy command on catalog graphs") {
    GreedyConfig cfg;
    cfg.max_steps = 50000;
    auto frucht = cmd_greedy(load_named("frucht"), "frucht", cfg);
    CHECK(frucht.measure->origin == "refined");
    CHECK(frucht.balance->is_balanced);
    CHECK(frucht.balance->exact);

    auto dodeca = cmd_greedy(load_named("dodecahedral"), "dodecahedral", GreedyConfig{});
    REQUIRE(dodeca.uniform_balance);
    CHECK(dodeca.uniform_balance->is_balanced);
    CHECK(dodeca.uniform_balance->exact);
}

TEST_CASE("balance command") {
    Graph p3 = gen_path(3);
    auto ok = cmd_balance(p3, "P_3", VertexMeasure::uniform_on(3, {0, 2}));
    CHECK(ok.balance->is_balanced);
    auto bad = cmd_balance(p3, "P_3", VertexMeasure::uniform(3));
    CHECK_FALSE(bad.balance->is_balanced);
    CHECK(bad.balance->support_T_spread_exact == "1/3");
    CHECK(bad.warnings.size() == 1);
    CHECK_THROWS_AS(cmd_balance(p3, "P_3", VertexMeasure::uniform(4)), InputError);
}

TEST_CASE("embed command") {
    auto star = cmd_embed(gen_star(3), "star", VertexMeasure::uniform_on(4, {1, 2, 3}), EmbedConfig{});
    CHECK(star.guarantees_hold);
    CHECK(star.coordinates.dim == 3);
    CHECK(star.labels == std::vector<std::string>{"1", "2", "3"});
    CHECK(star.document.embedding->hyperplane_exact);
    CHECK(star.document.embedding->lipschitz_violations == 0);

    EmbedConfig pca;
    pca.pca_dim = 2;
    auto frucht = cmd_embed(load_named("frucht"), "frucht", std::nullopt, pca);
    CHECK(frucht.guarantees_hold);
    CHECK(frucht.coordinates.dim == 2);
    CHECK(frucht.coordinates.size() == 12);
    CHECK(frucht.labels == std::vector<std::string>{"pc1", "pc2"});

    CHECK_THROWS_AS(cmd_embed(gen_path(3), "P_3", VertexMeasure::uniform(3), EmbedConfig{}), InputError);
    EmbedConfig force;
    force.force = true;
    auto forced = cmd_embed(gen_path(3), "P_3", VertexMeasure::uniform(3), force);
    CHECK_FALSE(forced.guarantees_hold);
    CHECK_FALSE(forced.document.warnings.empty());

    EmbedConfig post;
    post.drop_top = 2;
    post.center = true;
    auto dropped = cmd_embed(load_named("frucht"), "frucht", std::nullopt, post);
    CHECK(dropped.coordinates.dim == 2);
    CHECK(dropped.document.embedding->kept_columns.size() == 2);
    CHECK(dropped.document.embedding->centered);
    for (std::size_t v = 0; v < 12; ++v)
        CHECK(dropped.coordinates.point(v)[0] + dropped.coordinates.point(v)[1] == doctest::Approx(0.0));
}

TEST_CASE("oracle command") {
    auto p = cmd_oracle(gen_path(3), "P_3", SupportsMode{2});
    REQUIRE(p.oracle);
    CHECK(p.oracle->measures.size() == 1);
    CHECK(p.oracle->measures[0].energy_exact == "1");

    auto k8 = cmd_oracle(gen_complete(8), "K_8", GridMode{40});
    REQUIRE(k8.oracle->measures.size() == 1);
    for (const auto& e : k8.oracle->measures[0].entries) CHECK(e.exact == "1/8");
    CHECK(k8.oracle->mode == "grid");
    CHECK(k8.oracle->parameter == 40);
}

TEST_CASE("boundary command") {
    CHECK(cmd_boundary(gen_path(3), "P_3").boundary->members == std::vector<Vertex>{0, 2});
    CHECK(cmd_boundary(gen_complete(4), "K_4").boundary->size == 4);
    auto f = cmd_boundary(load_named("frucht"), "frucht");
    CHECK(f.boundary->size > 0);
    CHECK(f.boundary->satisfied);
}

TEST_CASE("refinement repair") {
    // Both central vertices of every path are needed; the equal-cost system on
    // them is singular, and the repair settles on one balanced member of the
    // family: mass 1/5 per path, level 33/2.
    GluedPaths gp = gen_glued_paths(5, 10);
    auto d = all_pairs_distances(gp.graph);
    CHECK(refine_on_support(d, gp.midpoints).status == RefineStatus::off_support_violation);
    std::size_t rounds = 0;
    auto r = refine_with_repair(d, gp.midpoints, 400, &rounds);
    REQUIRE(r.ok());
    CHECK(rounds > 0);
    CHECK(*r.level == make_rational(33, 2));
    CHECK(is_balanced(*r.measure, d).is_balanced);
    for (std::size_t p = 0; p < 5; ++p) {
        CHECK(r.measure->exact()[gp.midpoints[p]] + r.measure->exact()[gp.far_midpoints[p]] ==
              make_rational(1, 5));
    }

    std::vector<Vertex> both = gp.midpoints;
    both.insert(both.end(), gp.far_midpoints.begin(), gp.far_midpoints.end());
    CHECK(refine_on_support(d, both).status == RefineStatus::singular_system);
    auto sym = is_balanced(VertexMeasure::uniform_on(d.size(), both), d);
    CHECK(sym.is_balanced);
    CHECK(*sym.max_T_exact == make_rational(33, 2));
    CHECK_FALSE(is_balanced(VertexMeasure::uniform_on(d.size(), gp.midpoints), d).is_balanced);
}

TEST_CASE("result documents round-trip and are deterministic") {
    GreedyConfig cfg;
    cfg.audit = true;
    auto a = cmd_greedy(load_named("petersen"), "petersen", cfg, 1);
    auto b = cmd_greedy(load_named("petersen"), "petersen", cfg, 3);
    CHECK(to_json_text(a, false) == to_json_text(b, false));
    CHECK(from_json_text(to_json_text(a)) == a);

    auto e = cmd_embed(load_named("frucht"), "frucht", std::nullopt, EmbedConfig{});
    CHECK(from_json_text(to_json_text(e.document)) == e.document);
    auto o = cmd_oracle(load_named("petersen"), "petersen", SupportsMode{3});
    CHECK(from_json_text(to_json_text(o)) == o);

    auto no_timing = from_json_text(to_json_text(a, false));
    CHECK(no_timing.timing.empty());
    CHECK_THROWS_AS(from_json_text("{"), InputError);
    CHECK_THROWS_AS(from_json_text("{\"command\": 3}"), InputError);
}
