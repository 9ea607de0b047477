#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "balanced/document.hpp"
#include "balanced/embedding.hpp"
#include "balanced/error.hpp"
#include "balanced/generators.hpp"
#include "balanced/graph.hpp"
#include "balanced/greedy.hpp"
#include "balanced/measures.hpp"
#include "balanced/pipeline.hpp"

namespace py = pybind11;
using namespace balanced;

namespace {

py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_string(q));
}

// Floats give a double measure; ints, Fractions and "p/q" strings an exact one.
VertexMeasure to_measure(const py::sequence& weights) {
    bool exact = true;
    for (auto w : weights) exact = exact && !py::isinstance<py::float_>(w);
    if (exact) {
        std::vector<Rational> q;
        for (auto w : weights) q.push_back(parse_rational(py::str(w)));
        return VertexMeasure::from_rationals(std::move(q));
    }
    std::vector<double> x;
    for (auto w : weights) x.push_back(w.cast<double>());
    return VertexMeasure::from_doubles(std::move(x));
}

py::list weights_out(const VertexMeasure& mu) {
    py::list out;
    for (std::size_t v = 0; v < mu.size(); ++v) {
        if (mu.is_exact()) {
            out.append(fraction(mu.exact()[v]));
        } else {
            out.append(mu[v]);
        }
    }
    return out;
}

py::dict balance_dict(const BalanceReport& r) {
    py::dict d;
    d["is_balanced"] = r.is_balanced;
    d["exact"] = r.exact;
    d["support"] = r.support;
    d["argmax_set"] = r.argmax_set;
    d["max_T"] = r.max_T;
    d["support_T_spread"] = r.support_T_spread;
    d["max_T_exact"] = r.max_T_exact ? fraction(*r.max_T_exact) : py::none();
    return d;
}

py::dict refinement_dict(const Refinement& r) {
    py::dict d;
    d["status"] = to_string(r.status);
    d["ok"] = r.ok();
    d["reason"] = r.reason;
    d["level"] = r.level ? fraction(*r.level) : py::none();
    d["weights"] = r.measure ? py::object(weights_out(*r.measure)) : py::none();
    return d;
}

PointCloud cloud_from(py::array_t<double, py::array::c_style | py::array::forcecast> points) {
    if (points.ndim() != 2) throw InputError("points must be a 2-d array");
    PointCloud c;
    c.dim = static_cast<std::size_t>(points.shape(1));
    c.coords.assign(points.data(), points.data() + points.size());
    return c;
}

py::tuple cloud_out(const PointCloud& c) {
    const auto n = static_cast<py::ssize_t>(c.size());
    py::array_t<double> pts({n, static_cast<py::ssize_t>(c.dim)});
    std::copy(c.coords.begin(), c.coords.end(), pts.mutable_data());
    py::array_t<double> meta({n, static_cast<py::ssize_t>(c.meta_names.size())});
    std::copy(c.meta.begin(), c.meta.end(), meta.mutable_data());
    return py::make_tuple(pts, meta, c.meta_names);
}

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Balanced measures and 1-Lipschitz embeddings of graphs";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<GuaranteeViolation>(m, "GuaranteeViolation", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](const std::vector<Edge>& edges, std::size_t n) { return build_graph(edges, n); }),
             py::arg("edges"), py::arg("n"))
        .def_property_readonly("n", &Graph::size)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("edges", &Graph::edges)
        .def("degree", &Graph::degree)
        .def("neighbors",
             [](const Graph& g, Vertex v) {
                 auto s = g.neighbors(v);
                 return std::vector<Vertex>(s.begin(), s.end());
             })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.size()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<DistanceMatrix>(m, "DistanceMatrix")
        .def_property_readonly("n", &DistanceMatrix::size)
        .def_property_readonly("diameter", &DistanceMatrix::diameter)
        .def("__call__", [](const DistanceMatrix& d, std::size_t i, std::size_t j) { return d(i, j); })
        .def("to_numpy", [](const DistanceMatrix& d) {
            const auto n = static_cast<py::ssize_t>(d.size());
            py::array_t<std::uint16_t> a({n, n});
            std::copy(d.data().begin(), d.data().end(), a.mutable_data());
            return a;
        });

    m.def("distances", &all_pairs_distances, py::arg("graph"), py::arg("threads") = 0u);

    // generators
    m.def("path", &gen_path, py::arg("n"));
    m.def("cycle", &gen_cycle, py::arg("n"));
    m.def("complete", &gen_complete, py::arg("n"));
    m.def("star", &gen_star, py::arg("leaves"));
    m.def("grid", &gen_grid, py::arg("rows"), py::arg("cols"));
    m.def("erdos_renyi", &gen_erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("named", &load_named, py::arg("name"));
    m.def("named_graphs", &named_graphs);
    m.def(
        "glued_paths",
        [](std::size_t paths, std::size_t ell) {
            auto gp = gen_glued_paths(paths, ell);
            py::dict d;
            d["graph"] = gp.graph;
            d["hubs"] = std::vector<Vertex>{gp.hub_a, gp.hub_b};
            d["midpoints"] = gp.midpoints;
            d["far_midpoints"] = gp.far_midpoints;
            return d;
        },
        py::arg("m"), py::arg("ell"));
    m.def(
        "swiss_roll", [](std::size_t n, std::uint64_t seed) { return cloud_out(gen_swiss_roll(n, seed)); },
        py::arg("n"), py::arg("seed"), "(points, meta, meta_names) with meta columns t, h");
    m.def(
        "gaussian_clouds",
        [](std::size_t n, const std::vector<std::vector<double>>& centers, double sd, std::uint64_t seed) {
            return cloud_out(gen_gaussian_clouds(n, centers, sd, seed));
        },
        py::arg("n_per_cluster"), py::arg("centers"), py::arg("stddev"), py::arg("seed"));
    m.def(
        "knn_graph", [](py::array_t<double, py::array::c_style | py::array::forcecast> points,
                        std::size_t k) { return knn_graph(cloud_from(points), k); },
        py::arg("points"), py::arg("k"));

    // measures
    m.def(
        "transport_costs",
        [](const DistanceMatrix& d, const py::sequence& w) {
            auto mu = to_measure(w);
            if (!mu.is_exact()) return py::cast(transport_costs(mu, d));
            py::list out;
            for (const auto& t : transport_costs_exact(mu, d)) out.append(fraction(t));
            return py::object(out);
        },
        py::arg("d"), py::arg("weights"));
    m.def(
        "energy",
        [](const DistanceMatrix& d, const py::sequence& w) {
            auto mu = to_measure(w);
            return mu.is_exact() ? fraction(energy_quadratic_exact(mu, d)) : py::cast(energy_quadratic(mu, d));
        },
        py::arg("d"), py::arg("weights"));
    m.def(
        "is_balanced",
        [](const DistanceMatrix& d, const py::sequence& w, double tol) {
            return balance_dict(is_balanced(to_measure(w), d, tol));
        },
        py::arg("d"), py::arg("weights"), py::arg("tol") = kDefaultBalanceTol);
    m.def(
        "refine",
        [](const DistanceMatrix& d, const std::vector<Vertex>& support, bool repair) {
            return refinement_dict(repair ? refine_with_repair(d, support) : refine_on_support(d, support));
        },
        py::arg("d"), py::arg("support"), py::arg("repair") = true);
    m.def(
        "oracle",
        [](const DistanceMatrix& d, const std::string& mode, std::size_t max_size, unsigned resolution) {
            OracleMode om;
            if (mode == "grid") {
                om = GridMode{resolution};
            } else if (mode == "supports") {
                om = SupportsMode{max_size};
            } else {
                throw InputError("mode must be 'grid' or 'supports'");
            }
            py::list out;
            for (const auto& o : brute_force_balanced(d, om)) {
                py::dict e;
                e["weights"] = weights_out(o.measure);
                e["energy"] = fraction(o.energy);
                out.append(e);
            }
            return out;
        },
        py::arg("d"), py::arg("mode") = "supports", py::arg("max_size") = 4, py::arg("resolution") = 40u);

    // greedy
    m.def(
        "greedy",
        [](const DistanceMatrix& d, std::vector<Vertex> initial, std::size_t max_steps, std::size_t min_steps,
           std::optional<double> stop_gap, const std::string& tie_break, std::uint64_t seed, bool audit) {
            GreedyConfig cfg;
            cfg.initial = std::move(initial);
            cfg.max_steps = max_steps;
            cfg.min_steps = min_steps;
            cfg.stop_gap = stop_gap;
            cfg.tie_break = parse_tie_break(tie_break);
            cfg.seed = seed;
            cfg.audit = audit;
            if (cfg.tie_break == TieBreak::boundary_first) {
                throw InputError("use the greedy_document command for the boundary-first tie-break");
            }
            auto out = greedy_pipeline(d, cfg);
            const auto& c = out.convergence;
            py::dict r;
            r["steps"] = c.steps;
            r["m"] = c.m;
            r["E"] = c.E;
            r["E_exact"] = c.m >= 2 ? fraction(c.E_exact) : py::none();
            r["max_T"] = c.max_T;
            r["gap"] = c.gap;
            r["converged"] = c.converged;
            r["alpha_estimate"] = c.alpha_estimate;
            r["empirical"] = weights_out(out.empirical);
            r["candidate_support"] = out.candidate_support;
            r["origin"] = out.origin;
            r["weights"] = weights_out(out.measure);
            r["balance"] = balance_dict(out.balance);
            r["warnings"] = out.warnings;
            if (c.audit) r["audit_violations"] = c.audit->total_violations();
            return r;
        },
        py::arg("d"), py::arg("initial") = std::vector<Vertex>{0}, py::arg("max_steps") = 100000,
        py::arg("min_steps") = 1000, py::arg("stop_gap") = py::none(), py::arg("tie_break") = "smallest-index",
        py::arg("seed") = 0, py::arg("audit") = false);

    // embedding
    m.def(
        "embed",
        [](const DistanceMatrix& d, const py::sequence& w, bool force) {
            auto emb = embed(d, to_measure(w), kDefaultBalanceTol, force);
            const auto rows = static_cast<py::ssize_t>(emb.rows);
            py::array_t<double> coords({rows, static_cast<py::ssize_t>(emb.dim())});
            std::copy(emb.coords.begin(), emb.coords.end(), coords.mutable_data());
            auto lip = lipschitz_audit(emb, d);
            auto hyp = hyperplane_check(emb, d);
            auto sep = separation_check(emb, d.diameter());
            py::dict r;
            r["support"] = emb.support;
            r["alpha"] = emb.alpha_exact ? fraction(*emb.alpha_exact) : py::cast(emb.alpha);
            r["coords"] = coords;
            r["lipschitz_max_ratio"] = lip.max_ratio;
            r["lipschitz_violations"] = lip.violation_count;
            r["hyperplane_deviation"] = hyp.max_support_deviation;
            r["separation_bound"] = sep.bound;
            r["separation_min_avg_linf"] = sep.min_avg_linf;
            r["separation_mean_avg_l1"] = sep.mean_avg_l1;
            r["separation_satisfied"] = sep.satisfied;
            return r;
        },
        py::arg("d"), py::arg("weights"), py::arg("force") = false);
    m.def(
        "boundary",
        [](const Graph& g, const DistanceMatrix& d) {
            auto b = balanced::boundary(g, d);
            auto iso = isoperimetric_report(g, d, b);
            py::dict r;
            r["members"] = b.members;
            r["witnesses"] = b.witness;
            r["lower_bound"] = iso.lower_bound;
            r["satisfied"] = iso.satisfied;
            return r;
        },
        py::arg("graph"), py::arg("d"));
    m.def(
        "rank_correlation",
        [](const std::vector<double>& x, const std::vector<double>& y) { return rank_correlation(x, y); },
        py::arg("x"), py::arg("y"));

    // result documents, as parsed JSON
    m.def(
        "greedy_document",
        [](const Graph& g, std::size_t max_steps, bool audit) {
            GreedyConfig cfg;
            cfg.max_steps = max_steps;
            cfg.audit = audit;
            return parse_json(to_json_text(cmd_greedy(g, "python", cfg), false));
        },
        py::arg("graph"), py::arg("max_steps") = 100000, py::arg("audit") = false);
    m.def(
        "embed_document",
        [](const Graph& g, std::optional<py::sequence> weights, std::optional<std::size_t> drop_top,
           std::optional<std::size_t> pca_dim, bool center) {
            EmbedConfig cfg;
            cfg.drop_top = drop_top;
            cfg.pca_dim = pca_dim;
            cfg.center = center;
            std::optional<VertexMeasure> mu;
            if (weights) mu = to_measure(*weights);
            auto res = cmd_embed(g, "python", mu, cfg);
            const auto n = static_cast<py::ssize_t>(res.coordinates.size());
            py::array_t<double> coords({n, static_cast<py::ssize_t>(res.coordinates.dim)});
            std::copy(res.coordinates.coords.begin(), res.coordinates.coords.end(), coords.mutable_data());
            return py::make_tuple(parse_json(to_json_text(res.document, false)), coords, res.labels);
        },
        py::arg("graph"), py::arg("weights") = py::none(), py::arg("drop_top") = py::none(),
        py::arg("pca_dim") = py::none(), py::arg("center") = false);
}
