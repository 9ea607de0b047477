// balanced_embed: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 input or graph error,
// 3 embedding guarantee violated.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "balanced/document.hpp"
#include "balanced/error.hpp"
#include "balanced/generators.hpp"
#include "balanced/io.hpp"
#include "balanced/pipeline.hpp"

using namespace balanced;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuarantee = 3;

struct InputSpec {
    std::string path;
    std::string named;
    std::size_t knn = 0;
};

struct LoadedGraph {
    Graph graph;
    std::string source;
};

void add_input(CLI::App* cmd, InputSpec& in, bool allow_knn) {
    cmd->add_option("input", in.path, "edge-list file (or point file with --knn)");
    cmd->add_option("--named", in.named, "built-in graph: frucht, dodecahedral, desargues, petersen");
    if (allow_knn) cmd->add_option("--knn", in.knn, "treat input as a point file and build a k-NN graph");
}

LoadedGraph load_input(const InputSpec& in) {
    if (!in.named.empty() && !in.path.empty()) throw CLI::ValidationError("give either an input file or --named");
    if (!in.named.empty()) return {load_named(in.named), "named:" + in.named};
    if (in.path.empty()) throw CLI::ValidationError("an input file or --named is required");
    if (in.knn > 0) {
        PointCloud cloud = read_points_file(in.path);
        return {knn_graph(cloud, in.knn), "points:" + in.path + " knn=" + std::to_string(in.knn)};
    }
    return {read_edge_list_file(in.path), "file:" + in.path};
}

// Writes to `path`, or stdout when empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write(out);
}

struct Common {
    unsigned threads = 0;
    std::string out;
    bool no_timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--threads", c.threads, "worker threads (default: BALANCED_EMBED_THREADS or all cores)");
    cmd->add_option("--out", c.out, "result document path (default stdout)");
    cmd->add_flag("--no-timing", c.no_timing, "omit the timing section");
}

void emit_document(const Common& c, const ResultDocument& doc) {
    emit(c.out, [&](std::ostream& os) { os << to_json_text(doc, !c.no_timing); });
    for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
}

struct GreedyFlags {
    std::size_t max_steps = 100000;
    std::size_t min_steps = 1000;
    std::uint64_t seed = 0;
    std::string tie_break = "smallest-index";
    std::vector<Vertex> initial{0};
    std::optional<double> stop_gap;
    std::optional<double> eps_supp;
    bool audit = false;
};

void add_greedy_flags(CLI::App* cmd, GreedyFlags& f) {
    cmd->add_option("--max-steps", f.max_steps, "greedy step limit")->capture_default_str();
    cmd->add_option("--min-steps", f.min_steps, "steps before the gap test applies")->capture_default_str();
    cmd->add_option("--seed", f.seed, "seed for the random tie-break and sampled audits")->capture_default_str();
    cmd->add_option("--tie-break", f.tie_break, "smallest-index | boundary-first | random")->capture_default_str();
    cmd->add_option("--initial", f.initial, "initial vertex list")->capture_default_str();
    cmd->add_option("--stop-gap", f.stop_gap, "stop when |max T - E| <= gap (default 1e-3 * diam)");
    cmd->add_option("--eps-supp", f.eps_supp, "support threshold (default max(1e-3, 0.5/n))");
    cmd->add_flag("--audit", f.audit, "check trajectory invariants at every step");
}

GreedyConfig to_config(const GreedyFlags& f, double tol) {
    GreedyConfig cfg;
    cfg.initial = f.initial;
    cfg.tie_break = parse_tie_break(f.tie_break);
    cfg.seed = f.seed;
    cfg.max_steps = f.max_steps;
    cfg.min_steps = f.min_steps;
    cfg.stop_gap = f.stop_gap;
    cfg.eps_supp = f.eps_supp;
    cfg.tol = tol;
    cfg.audit = f.audit;
    return cfg;
}

struct GenerateFlags {
    std::string kind;
    std::size_t n = 0, m = 0, ell = 0, rows = 0, cols = 0, clusters = 3, dim = 2;
    double p = 0.1, sd = 1.0, spacing = 10.0;
    std::uint64_t seed = 0;
    std::string name;
    std::string out;
};

void run_generate(const GenerateFlags& f) {
    auto need = [&](std::size_t value, const char* flag) {
        if (value == 0) throw CLI::ValidationError(std::string("generate ") + f.kind + " needs " + flag);
    };
    auto write_graph = [&](const Graph& g, const std::string& comment) {
        emit(f.out, [&](std::ostream& os) { write_edge_list(os, g, comment); });
    };
    if (f.kind == "er") {
        need(f.n, "--n");
        write_graph(gen_erdos_renyi(f.n, f.p, f.seed),
                    "erdos-renyi n=" + std::to_string(f.n) + " p=" + std::to_string(f.p) +
                        " seed=" + std::to_string(f.seed));
    } else if (f.kind == "glued-paths") {
        need(f.m, "--m");
        need(f.ell, "--ell");
        GluedPaths gp = gen_glued_paths(f.m, f.ell);
        std::ostringstream c;
        c << "glued-paths m=" << f.m << " ell=" << f.ell << "\n# hubs: " << gp.hub_a << ' ' << gp.hub_b
          << "\n# midpoints:";
        for (Vertex v : gp.midpoints) c << ' ' << v;
        c << "\n# far_midpoints:";
        for (Vertex v : gp.far_midpoints) c << ' ' << v;
        write_graph(gp.graph, c.str());
    } else if (f.kind == "swiss-roll") {
        need(f.n, "--n");
        emit(f.out, [&](std::ostream& os) { write_points(os, gen_swiss_roll(f.n, f.seed)); });
    } else if (f.kind == "gaussian") {
        need(f.n, "--n");
        emit(f.out, [&](std::ostream& os) {
            // centers spaced along the first axis
            std::vector<std::vector<double>> centers(f.clusters, std::vector<double>(f.dim, 0.0));
            for (std::size_t c = 0; c < f.clusters; ++c) centers[c][0] = f.spacing * static_cast<double>(c);
            write_points(os, gen_gaussian_clouds(f.n, centers, f.sd, f.seed));
        });
    } else if (f.kind == "path") {
        need(f.n, "--n");
        write_graph(gen_path(f.n), "path n=" + std::to_string(f.n));
    } else if (f.kind == "cycle") {
        need(f.n, "--n");
        write_graph(gen_cycle(f.n), "cycle n=" + std::to_string(f.n));
    } else if (f.kind == "complete") {
        need(f.n, "--n");
        write_graph(gen_complete(f.n), "complete n=" + std::to_string(f.n));
    } else if (f.kind == "star") {
        need(f.n, "--n");
        write_graph(gen_star(f.n), "star leaves=" + std::to_string(f.n));
    } else if (f.kind == "grid") {
        need(f.rows, "--rows");
        need(f.cols, "--cols");
        write_graph(gen_grid(f.rows, f.cols), "grid " + std::to_string(f.rows) + "x" + std::to_string(f.cols));
    } else if (f.kind == "named") {
        if (f.name.empty()) throw CLI::ValidationError("generate named needs --name");
        write_graph(load_named(f.name), f.name);
    } else {
        throw CLI::ValidationError("unknown generator '" + f.kind + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced measures and 1-Lipschitz embeddings of graphs"};
    app.require_subcommand(1);

    GenerateFlags gen;
    auto* generate = app.add_subcommand("generate", "write a generated graph or point cloud");
    generate->add_option("kind", gen.kind,
                         "er | glued-paths | swiss-roll | gaussian | path | cycle | complete | star | grid | named")
        ->required();
    generate->add_option("--n", gen.n, "vertices, points, or points per cluster (gaussian); leaves for star");
    generate->add_option("--p", gen.p, "edge probability (er)");
    generate->add_option("--m", gen.m, "number of paths (glued-paths)");
    generate->add_option("--ell", gen.ell, "path half-length (glued-paths)");
    generate->add_option("--rows", gen.rows);
    generate->add_option("--cols", gen.cols);
    generate->add_option("--clusters", gen.clusters)->capture_default_str();
    generate->add_option("--dim", gen.dim)->capture_default_str();
    generate->add_option("--sd", gen.sd)->capture_default_str();
    generate->add_option("--spacing", gen.spacing, "distance between cluster centers")->capture_default_str();
    generate->add_option("--seed", gen.seed)->capture_default_str();
    generate->add_option("--name", gen.name, "catalog graph (named)");
    generate->add_option("--out", gen.out, "output path (default stdout)");

    InputSpec greedy_in;
    Common greedy_common;
    GreedyFlags greedy_flags;
    double greedy_tol = kDefaultBalanceTol;
    auto* greedy = app.add_subcommand("greedy", "greedy run, refinement and balance check");
    add_input(greedy, greedy_in, true);
    add_common(greedy, greedy_common);
    add_greedy_flags(greedy, greedy_flags);
    greedy->add_option("--tol", greedy_tol, "balance tolerance for inexact measures")->capture_default_str();

    InputSpec balance_in;
    Common balance_common;
    std::string balance_measure;
    double balance_tol = kDefaultBalanceTol;
    auto* balance = app.add_subcommand("balance", "check whether a measure is balanced");
    add_input(balance, balance_in, true);
    add_common(balance, balance_common);
    balance->add_option("--measure", balance_measure, "measure file (`vertex weight` lines)")->required();
    balance->add_option("--tol", balance_tol)->capture_default_str();

    InputSpec embed_in;
    Common embed_common;
    GreedyFlags embed_greedy;
    std::string embed_measure, embed_csv;
    bool embed_auto = false;
    EmbedConfig ecfg;
    auto* embed_cmd = app.add_subcommand("embed", "embed with a balanced measure and audit the result");
    add_input(embed_cmd, embed_in, true);
    add_common(embed_cmd, embed_common);
    add_greedy_flags(embed_cmd, embed_greedy);
    auto* measure_opt = embed_cmd->add_option("--measure", embed_measure, "measure file");
    auto* auto_opt = embed_cmd->add_flag("--auto", embed_auto, "derive the measure with greedy + refinement");
    measure_opt->excludes(auto_opt);
    embed_cmd->add_option("--drop-below", ecfg.drop_below, "drop coordinates with weight below this");
    embed_cmd->add_option("--drop-top", ecfg.drop_top, "keep only the k heaviest coordinates");
    embed_cmd->add_flag("--center", ecfg.center, "project rows onto the zero-sum hyperplane");
    embed_cmd->add_option("--pca-dim", ecfg.pca_dim, "PCA target dimension");
    embed_cmd->add_flag("--force", ecfg.force, "embed an unbalanced measure; failed audits still exit 3");
    embed_cmd->add_option("--tol", ecfg.tol)->capture_default_str();
    embed_cmd->add_option("--distortion-pairs", ecfg.distortion_pairs, "0 disables")->capture_default_str();
    embed_cmd->add_option("--csv", embed_csv, "coordinate CSV path");

    InputSpec oracle_in;
    Common oracle_common;
    std::string oracle_mode = "supports";
    std::size_t oracle_max_size = 4;
    unsigned oracle_resolution = 40;
    auto* oracle = app.add_subcommand("oracle", "brute-force search for balanced measures");
    add_input(oracle, oracle_in, false);
    add_common(oracle, oracle_common);
    oracle->add_option("--mode", oracle_mode, "grid | supports")
        ->check(CLI::IsMember({"grid", "supports"}))
        ->capture_default_str();
    oracle->add_option("--max-size", oracle_max_size)->capture_default_str();
    oracle->add_option("--resolution", oracle_resolution)->capture_default_str();

    InputSpec boundary_in;
    Common boundary_common;
    auto* boundary_cmd = app.add_subcommand("boundary", "list boundary vertices and the isoperimetric bound");
    add_input(boundary_cmd, boundary_in, true);
    add_common(boundary_cmd, boundary_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) {
            run_generate(gen);
        } else if (*greedy) {
            auto in = load_input(greedy_in);
            emit_document(greedy_common, cmd_greedy(in.graph, in.source, to_config(greedy_flags, greedy_tol),
                                                    greedy_common.threads));
        } else if (*balance) {
            auto in = load_input(balance_in);
            auto mu = read_measure_file(balance_measure, in.graph.size());
            emit_document(balance_common, cmd_balance(in.graph, in.source, mu, balance_tol, balance_common.threads));
        } else if (*embed_cmd) {
            if (embed_measure.empty() && !embed_auto) throw CLI::ValidationError("embed needs --measure or --auto");
            auto in = load_input(embed_in);
            std::optional<VertexMeasure> mu;
            if (!embed_measure.empty()) mu = read_measure_file(embed_measure, in.graph.size());
            ecfg.greedy = to_config(embed_greedy, ecfg.tol);
            ecfg.seed = embed_greedy.seed;
            auto res = cmd_embed(in.graph, in.source, mu, ecfg, embed_common.threads);
            emit_document(embed_common, res.document);
            if (!embed_csv.empty()) {
                emit(embed_csv, [&](std::ostream& os) { write_csv(os, res.coordinates, res.labels); });
            }
            if (!res.guarantees_hold) {
                std::cerr << "error: embedding audit failed\n";
                return kExitGuarantee;
            }
        } else if (*oracle) {
            auto in = load_input(oracle_in);
            OracleMode mode = oracle_mode == "grid" ? OracleMode{GridMode{oracle_resolution}}
                                                    : OracleMode{SupportsMode{oracle_max_size}};
            emit_document(oracle_common, cmd_oracle(in.graph, in.source, mode, oracle_common.threads));
        } else if (*boundary_cmd) {
            auto in = load_input(boundary_in);
            emit_document(boundary_common, cmd_boundary(in.graph, in.source, boundary_common.threads));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GuaranteeViolation& e) {
        std::cerr << "guarantee violation: " << e.what() << '\n';
        return kExitGuarantee;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
