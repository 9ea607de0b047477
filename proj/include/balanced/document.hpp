#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balanced/graph.hpp"

namespace balanced {

// Structured result of a command. Serialized as JSON with sorted keys;
// exact rationals travel as "p/q" strings next to their decimal value.
// Every field is filled from one library call; see pipeline.cpp.

struct MeasureEntry {
    Vertex vertex = 0;
    double weight = 0.0;
    std::string exact;  // empty when the weight is not exact
    bool operator==(const MeasureEntry&) const = default;
};

struct GraphSection {
    std::string source;
    std::size_t n = 0;
    std::size_t edges = 0;
    unsigned diameter = 0;
    std::size_t max_degree = 0;
    bool operator==(const GraphSection&) const = default;
};

struct ConfigSection {
    std::uint64_t seed = 0;
    std::string tie_break;
    std::size_t max_steps = 0;
    std::size_t min_steps = 0;
    double stop_gap = 0.0;
    double eps_supp = 0.0;
    double tol = 0.0;
    std::vector<Vertex> initial;
    bool operator==(const ConfigSection&) const = default;
};

struct ConvergenceSection {
    std::size_t steps = 0;
    std::size_t m = 0;
    double E = 0.0;
    std::string E_exact;
    double max_T = 0.0;
    double gap = 0.0;
    double stop_gap = 0.0;
    bool converged = false;
    double alpha_estimate = 0.0;
    bool alpha_in_range = false;
    bool heavy_vertices_near_max = false;
    std::vector<std::pair<std::size_t, double>> E_series;
    bool operator==(const ConvergenceSection&) const = default;
};

struct MeasureSection {
    std::string origin;  // refined | empirical | file | uniform
    std::string refine_status;
    std::string refine_reason;
    std::string level;   // common support transport cost, p/q
    std::vector<MeasureEntry> entries;  // support only
    bool operator==(const MeasureSection&) const = default;
};

struct BalanceSection {
    bool is_balanced = false;
    bool exact = false;
    std::vector<Vertex> support;
    std::vector<Vertex> argmax_set;
    double max_T = 0.0;
    std::string max_T_exact;
    double support_T_spread = 0.0;
    std::string support_T_spread_exact;
    bool operator==(const BalanceSection&) const = default;
};

struct EmbeddingSection {
    std::vector<Vertex> columns;
    double alpha = 0.0;
    std::string alpha_exact;
    // Lipschitz audit of the full embedding
    double lipschitz_max_ratio = 0.0;
    std::size_t lipschitz_violations = 0;
    std::pair<Vertex, Vertex> lipschitz_worst_pair{0, 0};
    std::size_t lipschitz_pairs = 0;
    bool lipschitz_sampled = false;
    double hyperplane_deviation = 0.0;
    bool hyperplane_exact = false;
    bool hyperplane_degenerate = false;
    double separation_min_avg_linf = 0.0;
    double separation_bound = 0.0;
    bool separation_satisfied = false;
    double separation_mean_avg_l1 = 0.0;
    bool guarantees_hold = false;
    // post-processing
    std::vector<Vertex> kept_columns;   // after dropping coordinates
    double reduced_alpha = 0.0;
    double reduced_lipschitz_max_ratio = 0.0;
    std::size_t reduced_lipschitz_violations = 0;
    bool centered = false;
    std::size_t output_dim = 0;
    std::vector<double> pca_explained_ratio;
    // distortion (optional; pairs == 0 when not computed)
    std::size_t distortion_pairs = 0;
    std::size_t distortion_collapsed = 0;
    double distortion_median_ratio = 0.0;
    double distortion_c_G = 0.0;
    double distortion_in_band = 0.0;
    bool operator==(const EmbeddingSection&) const = default;
};

struct BoundarySection {
    std::vector<Vertex> members;
    std::vector<Vertex> witnesses;
    std::size_t size = 0;
    std::size_t max_degree = 0;
    unsigned diameter = 0;
    double lower_bound = 0.0;
    bool satisfied = false;
    bool operator==(const BoundarySection&) const = default;
};

struct OracleEntry {
    std::vector<MeasureEntry> entries;
    double energy = 0.0;
    std::string energy_exact;
    std::string level;
    std::size_t argmax_size = 0;
    bool operator==(const OracleEntry&) const = default;
};

struct OracleSection {
    std::string mode;  // grid | supports
    std::size_t parameter = 0;  // resolution or max_size
    std::vector<OracleEntry> measures;
    bool operator==(const OracleSection&) const = default;
};

struct ResultDocument {
    std::string command;
    GraphSection graph;
    std::optional<ConfigSection> config;
    std::optional<ConvergenceSection> convergence;
    std::optional<MeasureSection> measure;
    std::optional<BalanceSection> balance;
    std::optional<BalanceSection> uniform_balance;
    std::optional<EmbeddingSection> embedding;
    std::optional<BoundarySection> boundary;
    std::optional<OracleSection> oracle;
    std::vector<std::string> warnings;
    std::map<std::string, double> timing;  // seconds per stage; not deterministic
    bool operator==(const ResultDocument&) const = default;
};

/// Pretty-printed JSON, keys sorted. With include_timing = false the output
/// is byte-identical across runs for identical inputs.
std::string to_json_text(const ResultDocument& doc, bool include_timing = true);
/// Inverse of to_json_text; throws InputError on malformed documents.
ResultDocument from_json_text(const std::string& text);

}  // namespace balanced
