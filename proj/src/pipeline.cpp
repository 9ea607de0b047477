#include "balanced/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <variant>


#include "balanced/error.hpp"

namespace balanced {

namespace {

class Stopwatch {
public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string opt_string(const std::optional<Rational>& q) { return q ? to_string(*q) : std::string(); }

}  // namespace

Refinement refine_with_repair(const DistanceMatrix& d, std::vector<Vertex> support, std::size_t max_rounds,
                              std::size_t* rounds) {
    if (rounds) *rounds = 0;
    Refinement first = refine_on_support(d, support);
    if (first.ok() || max_rounds == 0) return first;

    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const std::size_t n = d.size();
    constexpr std::size_t kAddPerRound = 8;
    std::vector<bool> in(n, false);
    for (Vertex v : support) in[v] = true;
    std::size_t round = 0;
    while (round < max_rounds) {
        ++round;
        Refinement sub = balance_on_subset(d, support);
        auto t = transport_costs_exact(*sub.measure, d);
        std::vector<Vertex> over;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in[v] && t[v] > *sub.level) over.push_back(static_cast<Vertex>(v));
        }
        if (over.empty()) {
            if (rounds) *rounds = round;
            return sub;
        }
        std::size_t take = std::min(kAddPerRound, over.size());
        std::partial_sort(over.begin(), over.begin() + static_cast<std::ptrdiff_t>(take), over.end(),
                          [&](Vertex a, Vertex b) { return t[a] != t[b] ? t[a] > t[b] : a < b; });
        for (std::size_t i = 0; i < take; ++i) {
            in[over[i]] = true;
            support.push_back(over[i]);
        }
    }
    if (rounds) *rounds = round;
    // keep the first diagnosis; it refers to the support the caller asked for
    first.reason += "; repair gave up after " + std::to_string(round) + " rounds";
    return first;
}

GreedyOutcome greedy_pipeline(const DistanceMatrix& d, const GreedyConfig& cfg, const BoundarySet* boundary) {
    const std::size_t n = d.size();
    GreedyOptions options;
    options.tie_break = cfg.tie_break;
    options.seed = cfg.seed;
    if (boundary) options.boundary = &boundary->contains;
    if (cfg.tie_break == TieBreak::boundary_first && !boundary) {
        throw InputError("boundary-first tie-break needs the boundary set");
    }
    GreedyState state = init_state(d, cfg.initial, options);

    RunConfig rc;
    rc.max_steps = cfg.max_steps;
    rc.min_steps = cfg.min_steps;
    rc.stop_gap = cfg.stop_gap;
    rc.audit = cfg.audit;
    if (boundary && cfg.audit) rc.boundary = &boundary->contains;

    GreedyOutcome out;
    out.convergence = run(state, rc);
    out.empirical = empirical_measure(state);
    out.eps_supp = cfg.eps_supp.value_or(default_support_threshold(n));
    out.candidate_support = extract_support(out.empirical, out.eps_supp);
    out.refinement = cfg.repair ? refine_with_repair(d, out.candidate_support, 400, &out.repair_rounds)
                                : refine_on_support(d, out.candidate_support);
    if (out.refinement.ok()) {
        out.measure = *out.refinement.measure;
        out.origin = "refined";
    } else {
        out.measure = out.empirical;
        out.origin = "empirical";
        out.warnings.push_back("refinement failed (" + to_string(out.refinement.status) + ": " +
                               out.refinement.reason + "); using the empirical measure");
    }
    out.balance = is_balanced(out.measure, d, cfg.tol);
    if (!out.convergence.converged) {
        out.warnings.push_back("greedy did not reach the stopping gap within " + std::to_string(cfg.max_steps) +
                               " steps");
    }
    if (!out.balance.is_balanced) out.warnings.push_back("final measure is not balanced");
    if (out.convergence.audit && out.convergence.audit->total_violations() > 0) {
        out.warnings.push_back("trajectory invariant audit reported " +
                               std::to_string(out.convergence.audit->total_violations()) + " violations");
    }
    return out;
}

GraphSection graph_section(const Graph& g, const DistanceMatrix& d, const std::string& source) {
    return {source, g.size(), g.edge_count(), d.diameter(), g.max_degree()};
}

ConfigSection config_section(const GreedyConfig& cfg, double stop_gap, double eps_supp) {
    ConfigSection c;
    c.seed = cfg.seed;
    c.tie_break = to_string(cfg.tie_break);
    c.max_steps = cfg.max_steps;
    c.min_steps = cfg.min_steps;
    c.stop_gap = stop_gap;
    c.eps_supp = eps_supp;
    c.tol = cfg.tol;
    c.initial = cfg.initial;
    return c;
}

ConvergenceSection convergence_section(const ConvergenceReport& r) {
    ConvergenceSection c;
    c.steps = r.steps;
    c.m = r.m;
    c.E = r.E;
    c.E_exact = r.m >= 2 ? to_string(r.E_exact) : std::string();
    c.max_T = r.max_T;
    c.gap = r.gap;
    c.stop_gap = r.stop_gap;
    c.converged = r.converged;
    c.alpha_estimate = r.alpha_estimate;
    c.alpha_in_range = r.alpha_in_range;
    c.heavy_vertices_near_max = r.heavy_vertices_near_max;
    c.E_series = r.E_series;
    return c;
}

MeasureSection measure_section(const VertexMeasure& mu, const std::string& origin) {
    MeasureSection s;
    s.origin = origin;
    for (Vertex v : mu.support()) {
        MeasureEntry e{v, mu[v], {}};
        if (mu.is_exact()) e.exact = to_string(mu.exact()[v]);
        s.entries.push_back(std::move(e));
    }
    return s;
}

BalanceSection balance_section(const BalanceReport& r) {
    BalanceSection s;
    s.is_balanced = r.is_balanced;
    s.exact = r.exact;
    s.support = r.support;
    s.argmax_set = r.argmax_set;
    s.max_T = r.max_T;
    s.max_T_exact = opt_string(r.max_T_exact);
    s.support_T_spread = r.support_T_spread;
    s.support_T_spread_exact = opt_string(r.support_T_spread_exact);
    return s;
}

BoundarySection boundary_section(const BoundarySet& b, const IsoperimetricReport& iso) {
    BoundarySection s;
    s.members = b.members;
    s.witnesses = b.witness;
    s.size = iso.boundary_size;
    s.max_degree = iso.max_degree;
    s.diameter = iso.diameter;
    s.lower_bound = iso.lower_bound;
    s.satisfied = iso.satisfied;
    return s;
}

ResultDocument cmd_greedy(const Graph& g, const std::string& source, const GreedyConfig& cfg, unsigned threads) {
    Stopwatch clock;
    ResultDocument doc;
    doc.command = "greedy";
    DistanceMatrix d = all_pairs_distances(g, threads);
    doc.timing["distances"] = clock.lap();
    doc.graph = graph_section(g, d, source);

    BoundarySet b = boundary(g, d);
    doc.boundary = boundary_section(b, isoperimetric_report(g, d, b));
    doc.timing["boundary"] = clock.lap();

    GreedyOutcome out = greedy_pipeline(d, cfg, &b);
    doc.timing["greedy"] = clock.lap();

    doc.config = config_section(cfg, out.convergence.stop_gap, out.eps_supp);
    doc.convergence = convergence_section(out.convergence);
    doc.measure = measure_section(out.measure, out.origin);
    doc.measure->refine_status = to_string(out.refinement.status);
    doc.measure->refine_reason = out.refinement.reason;
    doc.measure->level = opt_string(out.refinement.level);
    doc.balance = balance_section(out.balance);
    if (g.size() <= 2000) doc.uniform_balance = balance_section(is_balanced(VertexMeasure::uniform(g.size()), d));
    doc.warnings = out.warnings;
    doc.timing["balance"] = clock.lap();
    return doc;
}

ResultDocument cmd_balance(const Graph& g, const std::string& source, const VertexMeasure& mu, double tol,
                           unsigned threads) {
    if (mu.size() != g.size()) {
        throw InputError("measure has " + std::to_string(mu.size()) + " entries but the graph has " +
                         std::to_string(g.size()) + " vertices");
    }
    Stopwatch clock;
    ResultDocument doc;
    doc.command = "balance";
    DistanceMatrix d = all_pairs_distances(g, threads);
    doc.timing["distances"] = clock.lap();
    doc.graph = graph_section(g, d, source);
    doc.measure = measure_section(mu, "file");
    doc.balance = balance_section(is_balanced(mu, d, tol));
    if (!doc.balance->is_balanced) doc.warnings.push_back("measure is not balanced");
    doc.timing["balance"] = clock.lap();
    return doc;
}

EmbedResult cmd_embed(const Graph& g, const std::string& source, const std::optional<VertexMeasure>& mu,
                      const EmbedConfig& cfg, unsigned threads) {
    Stopwatch clock;
    EmbedResult res;
    ResultDocument& doc = res.document;
    doc.command = "embed";
    DistanceMatrix d = all_pairs_distances(g, threads);
    doc.timing["distances"] = clock.lap();
    doc.graph = graph_section(g, d, source);

    VertexMeasure measure;
    if (mu) {
        if (mu->size() != g.size()) {
            throw InputError("measure has " + std::to_string(mu->size()) + " entries but the graph has " +
                             std::to_string(g.size()) + " vertices");
        }
        measure = *mu;
        doc.measure = measure_section(measure, "file");
    } else {
        std::optional<BoundarySet> b;
        if (cfg.greedy.tie_break == TieBreak::boundary_first) b = boundary(g, d);
        GreedyOutcome out = greedy_pipeline(d, cfg.greedy, b ? &*b : nullptr);
        doc.timing["greedy"] = clock.lap();
        doc.config = config_section(cfg.greedy, out.convergence.stop_gap, out.eps_supp);
        doc.convergence = convergence_section(out.convergence);
        measure = out.measure;
        doc.measure = measure_section(measure, out.origin);
        doc.measure->refine_status = to_string(out.refinement.status);
        doc.measure->refine_reason = out.refinement.reason;
        doc.measure->level = opt_string(out.refinement.level);
        doc.warnings = out.warnings;
    }
    BalanceReport br = is_balanced(measure, d, cfg.tol);
    doc.balance = balance_section(br);
    if (!br.is_balanced && !cfg.force) {
        throw InputError("measure is not balanced (support transport-cost spread " +
                         std::to_string(br.support_T_spread) + "); pass --force to embed anyway");
    }
    if (!br.is_balanced) doc.warnings.push_back("embedding an unbalanced measure (forced)");

    res.embedding = embed(d, measure, cfg.tol, true);
    const Embedding& emb = res.embedding;
    doc.timing["embed"] = clock.lap();

    EmbeddingSection es;
    es.columns = emb.support;
    es.alpha = emb.alpha;
    es.alpha_exact = opt_string(emb.alpha_exact);
    LipschitzOptions lo;
    lo.seed = cfg.seed;
    auto lip = lipschitz_audit(emb, d, lo);
    es.lipschitz_max_ratio = lip.max_ratio;
    es.lipschitz_violations = lip.violation_count;
    es.lipschitz_worst_pair = lip.worst_pair;
    es.lipschitz_pairs = lip.pairs_checked;
    es.lipschitz_sampled = lip.sampled;
    auto hyp = hyperplane_check(emb, d);
    es.hyperplane_deviation = hyp.max_support_deviation;
    es.hyperplane_exact = hyp.exact;
    es.hyperplane_degenerate = hyp.degenerate;
    auto sep = separation_check(emb, d.diameter());
    es.separation_min_avg_linf = sep.min_avg_linf;
    es.separation_bound = sep.bound;
    es.separation_satisfied = sep.satisfied;
    es.separation_mean_avg_l1 = sep.mean_avg_l1;
    es.guarantees_hold = lip.violation_count == 0 && hyp.max_support_deviation <= 1e-9 && sep.satisfied;
    res.guarantees_hold = es.guarantees_hold;
    if (!es.guarantees_hold) doc.warnings.push_back("embedding audit failed");
    doc.timing["audit"] = clock.lap();

    if (cfg.distortion_pairs > 0) {
        auto dist = distortion_report(emb, d, cfg.distortion_pairs, cfg.seed);
        es.distortion_pairs = dist.pairs;
        es.distortion_collapsed = dist.collapsed_pairs;
        es.distortion_median_ratio = dist.median_ratio;
        es.distortion_c_G = dist.c_G;
        es.distortion_in_band = dist.in_band_fraction;
        doc.timing["distortion"] = clock.lap();
    }

    Embedding reduced = emb;
    if (cfg.drop_below) reduced = drop_small_coordinates(reduced, *cfg.drop_below);
    if (cfg.drop_top) reduced = keep_top_coordinates(reduced, *cfg.drop_top);
    es.kept_columns = reduced.support;
    es.reduced_alpha = reduced.alpha;
    if (cfg.drop_below || cfg.drop_top) {
        auto rl = lipschitz_audit(reduced, d, lo);
        es.reduced_lipschitz_max_ratio = rl.max_ratio;
        es.reduced_lipschitz_violations = rl.violation_count;
    } else {
        es.reduced_lipschitz_max_ratio = lip.max_ratio;
        es.reduced_lipschitz_violations = lip.violation_count;
    }

    PointCloud pts = cfg.center ? center_project(reduced) : as_points(reduced);
    es.centered = cfg.center;
    for (Vertex w : reduced.support) res.labels.push_back(std::to_string(w));
    if (cfg.pca_dim) {
        auto pca = pca_reduce(pts, *cfg.pca_dim);
        pts = std::move(pca.points);
        es.pca_explained_ratio = pca.explained_ratio;
        res.labels.clear();
        for (std::size_t j = 0; j < pts.dim; ++j) res.labels.push_back("pc" + std::to_string(j + 1));
    }
    es.output_dim = pts.dim;
    res.coordinates = std::move(pts);
    doc.embedding = std::move(es);
    doc.timing["postprocess"] = clock.lap();
    return res;
}

ResultDocument cmd_oracle(const Graph& g, const std::string& source, const OracleMode& mode, unsigned threads) {
    Stopwatch clock;
    ResultDocument doc;
    doc.command = "oracle";
    DistanceMatrix d = all_pairs_distances(g, threads);
    doc.timing["distances"] = clock.lap();
    doc.graph = graph_section(g, d, source);
    OracleSection os;
    if (const auto* grid = std::get_if<GridMode>(&mode)) {
        os.mode = "grid";
        os.parameter = grid->resolution;
    } else {
        os.mode = "supports";
        os.parameter = std::get<SupportsMode>(mode).max_size;
    }
    for (const auto& om : brute_force_balanced(d, mode)) {
        OracleEntry e;
        e.entries = measure_section(om.measure, "oracle").entries;
        e.energy = om.energy_value;
        e.energy_exact = to_string(om.energy);
        auto br = is_balanced(om.measure, d);
        e.level = opt_string(br.max_T_exact);
        e.argmax_size = br.argmax_set.size();
        os.measures.push_back(std::move(e));
    }
    doc.oracle = std::move(os);
    doc.timing["oracle"] = clock.lap();
    return doc;
}

ResultDocument cmd_boundary(const Graph& g, const std::string& source, unsigned threads) {
    Stopwatch clock;
    ResultDocument doc;
    doc.command = "boundary";
    DistanceMatrix d = all_pairs_distances(g, threads);
    doc.timing["distances"] = clock.lap();
    doc.graph = graph_section(g, d, source);
    BoundarySet b = boundary(g, d);
    auto iso = isoperimetric_report(g, d, b);
    doc.boundary = boundary_section(b, iso);
    if (!iso.satisfied) doc.warnings.push_back("isoperimetric bound not satisfied");
    doc.timing["boundary"] = clock.lap();
    return doc;
}

}  // namespace balanced
