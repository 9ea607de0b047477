#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balanced/exact.hpp"
#include "balanced/graph.hpp"
#include "balanced/measures.hpp"
#include "balanced/random.hpp"

namespace balanced {

/// How greedy_step picks among vertices sharing the maximal distance sum.
enum class TieBreak {
    smallest_index,  // default
    boundary_first,  // smallest index among maximizers in the boundary, if any
    random,          // uniform among maximizers, seeded
};
std::string to_string(TieBreak t);
TieBreak parse_tie_break(const std::string& s);

struct GreedyOptions {
    TieBreak tie_break = TieBreak::smallest_index;
    std::uint64_t seed = 0;                    // for TieBreak::random
    const std::vector<bool>* boundary = nullptr;  // required by boundary_first
};

/// Greedy remote-vertex trajectory x_1..x_m with exact bookkeeping:
///   sums(v) = sum_i d(v, x_i)
///   F       = sum_{i,j} d(x_i, x_j) = sum_v counts(v) sums(v)
/// The distance matrix is borrowed and must outlive the state.
class GreedyState {
public:
    GreedyState(const DistanceMatrix& d, const std::vector<Vertex>& initial,
                GreedyOptions options = {});

    const DistanceMatrix& distances() const { return *d_; }
    const GreedyOptions& options() const { return options_; }
    std::size_t length() const { return sequence_.size(); }
    const std::vector<Vertex>& sequence() const { return sequence_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    const std::vector<std::int64_t>& sums() const { return sums_; }
    std::int64_t energy_sum() const { return F_; }

    /// E_m = F / (m (m-1)); requires m >= 2.
    Rational energy_exact() const;
    double energy() const;

    /// Recomputes F from counts and sums.
    std::int64_t energy_sum_from_scratch() const;
    /// Recomputes sums from the counts.
    std::vector<std::int64_t> sums_from_scratch() const;

    /// Appends x_{m+1} = argmax_v sums(v), updating counts, sums and F.
    Vertex step();

    struct Scan {
        Vertex chosen = 0;
        std::int64_t max_sum = 0;
        bool maximizer_in_boundary = false;  // meaningful when boundary set given
    };
    /// The argmax scan of step(), without mutating; the random tie-break
    /// consumes randomness only in step().
    Scan scan(const std::vector<bool>* boundary = nullptr) const;

private:
    void append(Vertex x);
    Scan scan_impl(const std::vector<bool>* boundary, Rng* rng) const;

    const DistanceMatrix* d_;
    GreedyOptions options_;
    Rng rng_;
    std::vector<Vertex> sequence_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::int64_t> sums_;
    std::int64_t F_ = 0;
};

/// Throws InputError on an empty or out-of-range initial list.
GreedyState init_state(const DistanceMatrix& d, const std::vector<Vertex>& initial,
                       GreedyOptions options = {});

Vertex greedy_step(GreedyState& state);

/// mu_m(v) = counts(v) / m, exact.
VertexMeasure empirical_measure(const GreedyState& state);

struct RunConfig {
    std::size_t max_steps = 100000;
    std::size_t min_steps = 1000;           // the gap test applies from here on
    std::size_t sample_every = 1000;        // E_series stride
    std::optional<double> stop_gap;         // default 1e-3 * diam
    double eps_mass = 0.01;                 // heavy-vertex diagnostic: mass threshold
    std::optional<double> eps_report;       // ... and cost slack, default 1e-2 * diam
    bool audit = false;                     // check trajectory invariants at every step
    std::size_t scratch_samples = 1000;     // audited steps that also recompute sums from scratch
    const std::vector<bool>* boundary = nullptr;  // enables the boundary-selection audit
};

/// Invariant checks along a trajectory. All comparisons are exact integers.
struct InvariantAudit {
    std::size_t steps_checked = 0;
    std::size_t recurrence_violations = 0;  // F_{m+1} != F_m + 2 S_m(x_{m+1}), F from scratch
    std::size_t monotone_violations = 0;    // m S_m(x_{m+1}) < F_m
    std::size_t minimax_violations = 0;     // 2 max S_m < m diam
    std::size_t continuity_checks = 0;
    std::size_t continuity_violations = 0;  // |T_{m+1} - T_m|_inf > diam / (m+1)
    std::size_t sums_checks = 0;
    std::size_t sums_violations = 0;        // incremental sums != recomputed sums
    std::size_t boundary_checks = 0;
    std::size_t boundary_violations = 0;    // no maximizer of S_m in the boundary

    std::size_t total_violations() const {
        return recurrence_violations + monotone_violations + minimax_violations +
               continuity_violations + sums_violations + boundary_violations;
    }
};

struct ConvergenceReport {
    std::size_t steps = 0;  // greedy steps taken by run()
    std::size_t m = 0;      // trajectory length at termination
    unsigned diameter = 0;
    std::int64_t F = 0;
    Rational E_exact;       // F / (m (m-1))
    double E = 0.0;
    double max_T = 0.0;     // max_v sums(v) / m
    double gap = 0.0;       // |max_T - E|
    double stop_gap = 0.0;
    bool converged = false;  // gap <= stop_gap
    double alpha_estimate = 0.0;
    bool alpha_in_range = false;  // diam/2 - stop_gap <= alpha <= diam + stop_gap
    std::vector<std::pair<std::size_t, double>> E_series;

    double eps_mass = 0.0;
    double eps_report = 0.0;
    bool heavy_vertices_near_max = false;  // mu_m(v) > eps_mass => T_m(v) >= max_T - eps_report
    std::vector<Vertex> heavy_vertex_violations;

    std::optional<InvariantAudit> audit;
};

/// Runs greedy steps until |max_v T_m(v) - E_m| <= stop_gap (checked once
/// min_steps steps were taken) or max_steps is reached. The gap alone can
/// vanish early: on P_3 it is zero at every odd m while E_m = 1 + 1/m. Non-convergence is
/// reported, not thrown.
ConvergenceReport run(GreedyState& state, const RunConfig& config = {});

}  // namespace balanced
