#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balanced/document.hpp"
#include "balanced/embedding.hpp"
#include "balanced/generators.hpp"
#include "balanced/graph.hpp"
#include "balanced/greedy.hpp"
#include "balanced/measures.hpp"

namespace balanced {

/// Refines on `support`; when the exact system fails, balances exactly on a
/// growing vertex set that starts at `support`, adding the most violating
/// outside vertices each round until no vertex exceeds the level. `rounds`
/// receives the number of repair rounds.
Refinement refine_with_repair(const DistanceMatrix& d, std::vector<Vertex> support,
                              std::size_t max_rounds = 400, std::size_t* rounds = nullptr);

struct GreedyConfig {
    std::vector<Vertex> initial{0};
    TieBreak tie_break = TieBreak::smallest_index;
    std::uint64_t seed = 0;
    std::size_t max_steps = 100000;
    std::size_t min_steps = 1000;
    std::optional<double> stop_gap;   // default 1e-3 * diam
    std::optional<double> eps_supp;   // default default_support_threshold(n)
    double tol = kDefaultBalanceTol;
    bool audit = false;
    bool repair = true;
};

struct GreedyOutcome {
    ConvergenceReport convergence;
    VertexMeasure empirical;
    std::vector<Vertex> candidate_support;
    Refinement refinement;
    std::size_t repair_rounds = 0;
    VertexMeasure measure;  // refined when refinement.ok(), else empirical
    std::string origin;     // "refined" | "empirical"
    BalanceReport balance;
    double eps_supp = 0.0;
    std::vector<std::string> warnings;
};

/// Greedy run from cfg.initial, empirical measure, support extraction,
/// refinement and balance check. `boundary` (optional) feeds the
/// boundary-first tie-break and the boundary audit.
GreedyOutcome greedy_pipeline(const DistanceMatrix& d, const GreedyConfig& cfg,
                              const BoundarySet* boundary = nullptr);

GraphSection graph_section(const Graph& g, const DistanceMatrix& d, const std::string& source);
ConfigSection config_section(const GreedyConfig& cfg, double stop_gap, double eps_supp);
ConvergenceSection convergence_section(const ConvergenceReport& r);
MeasureSection measure_section(const VertexMeasure& mu, const std::string& origin);
BalanceSection balance_section(const BalanceReport& r);
BoundarySection boundary_section(const BoundarySet& b, const IsoperimetricReport& iso);

// Commands. Each returns the result document; `threads` = 0 uses
// default_thread_count(). Output never depends on the thread count.

ResultDocument cmd_greedy(const Graph& g, const std::string& source, const GreedyConfig& cfg,
                          unsigned threads = 0);

ResultDocument cmd_balance(const Graph& g, const std::string& source, const VertexMeasure& mu,
                           double tol = kDefaultBalanceTol, unsigned threads = 0);

struct EmbedConfig {
    std::optional<double> drop_below;     // keep columns with weight >= threshold
    std::optional<std::size_t> drop_top;  // keep the k heaviest columns
    bool center = false;
    std::optional<std::size_t> pca_dim;
    bool force = false;                   // embed unbalanced measures
    double tol = kDefaultBalanceTol;
    std::size_t distortion_pairs = 200000;  // 0 disables the report
    std::uint64_t seed = 0;
    GreedyConfig greedy;                  // used when no measure is given
};

struct EmbedResult {
    ResultDocument document;
    PointCloud coordinates;           // final (post-processed) coordinates
    std::vector<std::string> labels;  // CSV column labels
    Embedding embedding;              // before post-processing
    bool guarantees_hold = false;
};

/// Embeds with `mu`, or with the greedy pipeline's measure when mu is empty.
EmbedResult cmd_embed(const Graph& g, const std::string& source, const std::optional<VertexMeasure>& mu,
                      const EmbedConfig& cfg, unsigned threads = 0);

ResultDocument cmd_oracle(const Graph& g, const std::string& source, const OracleMode& mode,
                          unsigned threads = 0);

ResultDocument cmd_boundary(const Graph& g, const std::string& source, unsigned threads = 0);

}  // namespace balanced
