#include "balanced/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "balanced/error.hpp"

namespace balanced {

std::string to_string(TieBreak t) {
    switch (t) {
        case TieBreak::smallest_index: return "smallest-index";
        case TieBreak::boundary_first: return "boundary-first";
        case TieBreak::random: return "random";
    }
    return "unknown";
}

TieBreak parse_tie_break(const std::string& s) {
    if (s == "smallest-index") return TieBreak::smallest_index;
    if (s == "boundary-first") return TieBreak::boundary_first;
    if (s == "random") return TieBreak::random;
    throw InputError("unknown tie-break '" + s + "' (smallest-index | boundary-first | random)");
}

GreedyState::GreedyState(const DistanceMatrix& d, const std::vector<Vertex>& initial,
                         GreedyOptions options)
    : d_(&d), options_(options), rng_(options.seed), counts_(d.size(), 0), sums_(d.size(), 0) {
    if (initial.empty()) throw InputError("initial list must be nonempty");
    if (options_.tie_break == TieBreak::boundary_first &&
        (options_.boundary == nullptr || options_.boundary->size() != d.size())) {
        throw InputError("boundary-first tie-break needs the boundary indicator");
    }
    for (Vertex v : initial) {
        if (v >= d.size()) throw InputError("initial vertex " + std::to_string(v) + " out of range");
        append(v);
    }
    F_ = energy_sum_from_scratch();
}

void GreedyState::append(Vertex x) {
    const std::size_t m = sequence_.size() + 1;
    const double bound = static_cast<double>(m) * static_cast<double>(m) * std::max(1u, d_->diameter());
    if (bound >= 0.5 * static_cast<double>(std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("greedy trajectory too long for 64-bit bookkeeping");
    sequence_.push_back(x);
    ++counts_[x];
    auto row = d_->row(x);
    for (std::size_t v = 0; v < sums_.size(); ++v) sums_[v] += row[v];
}

std::int64_t GreedyState::energy_sum_from_scratch() const {
    std::int64_t f = 0;
    for (std::size_t v = 0; v < counts_.size(); ++v)
        if (counts_[v] != 0) f += static_cast<std::int64_t>(counts_[v]) * sums_[v];
    return f;
}

std::vector<std::int64_t> GreedyState::sums_from_scratch() const {
    std::vector<std::int64_t> s(counts_.size(), 0);
    for (std::size_t u = 0; u < counts_.size(); ++u) {
        if (counts_[u] == 0) continue;
        auto row = d_->row(u);
        const auto c = static_cast<std::int64_t>(counts_[u]);
        for (std::size_t v = 0; v < s.size(); ++v) s[v] += c * row[v];
    }
    return s;
}

Rational GreedyState::energy_exact() const {
    const std::size_t m = length();
    if (m < 2) throw std::logic_error("E_m needs at least two vertices");
    Rational e{Integer(static_cast<long>(F_)), Integer(static_cast<long>(m)) * Integer(static_cast<long>(m - 1))};
    e.canonicalize();
    return e;
}

double GreedyState::energy() const {
    const double m = static_cast<double>(length());
    return static_cast<double>(F_) / (m * (m - 1.0));
}

GreedyState::Scan GreedyState::scan_impl(const std::vector<bool>* boundary, Rng* rng) const {
    const std::size_t n = sums_.size();
    const bool prefer_boundary = options_.tie_break == TieBreak::boundary_first;
    if (prefer_boundary) boundary = options_.boundary;

    Scan s;
    s.max_sum = -1;
    std::size_t ties = 0;
    std::size_t first_boundary = n;
    for (std::size_t v = 0; v < n; ++v) {
        const std::int64_t value = sums_[v];
        if (value > s.max_sum) {
            s.max_sum = value;
            s.chosen = static_cast<Vertex>(v);
            ties = 1;
            first_boundary = n;
            s.maximizer_in_boundary = false;
        } else if (value == s.max_sum) {
            ++ties;
            if (rng != nullptr && rng->below(ties) == 0) s.chosen = static_cast<Vertex>(v);
        } else {
            continue;
        }
        if (boundary != nullptr && (*boundary)[v]) {
            s.maximizer_in_boundary = true;
            if (first_boundary == n) first_boundary = v;
        }
    }
    if (prefer_boundary && first_boundary != n) s.chosen = static_cast<Vertex>(first_boundary);
    return s;
}

GreedyState::Scan GreedyState::scan(const std::vector<bool>* boundary) const {
    return scan_impl(boundary, nullptr);
}

Vertex GreedyState::step() {
    Rng* rng = options_.tie_break == TieBreak::random ? &rng_ : nullptr;
    Scan s = scan_impl(nullptr, rng);
    F_ += 2 * sums_[s.chosen];
    append(s.chosen);
    return s.chosen;
}

GreedyState init_state(const DistanceMatrix& d, const std::vector<Vertex>& initial,
                       GreedyOptions options) {
    return GreedyState(d, initial, options);
}

Vertex greedy_step(GreedyState& state) { return state.step(); }

VertexMeasure empirical_measure(const GreedyState& state) {
    const std::size_t m = state.length();
    std::vector<Rational> w(state.counts().size());
    for (std::size_t v = 0; v < w.size(); ++v)
        w[v] = make_rational(static_cast<long>(state.counts()[v]), static_cast<long>(m));
    return VertexMeasure::from_rationals(std::move(w));
}

namespace {

// One audited step: checks every invariant against the pre-step state,
// performs the step, and checks the post-step bookkeeping.
void audited_step(GreedyState& state, const RunConfig& config, bool recompute_sums,
                  InvariantAudit& audit) {
    const DistanceMatrix& d = state.distances();
    const auto m = static_cast<std::int64_t>(state.length());
    const std::int64_t diam = d.diameter();
    const std::int64_t f_before = state.energy_sum();

    auto probe = state.scan(config.boundary);
    const std::vector<std::int64_t> sums_before = state.sums();

    const Vertex x = state.step();
    const std::int64_t s_x = sums_before[x];
    ++audit.steps_checked;

    if (state.energy_sum_from_scratch() != f_before + 2 * s_x) ++audit.recurrence_violations;
    if (state.energy_sum() != state.energy_sum_from_scratch()) ++audit.recurrence_violations;
    if (m * s_x < f_before) ++audit.monotone_violations;
    if (2 * probe.max_sum < m * diam) ++audit.minimax_violations;
    if (config.boundary != nullptr) {
        ++audit.boundary_checks;
        if (!probe.maximizer_in_boundary) ++audit.boundary_violations;
    }

    // T_{m+1}(v) - T_m(v) = (m d(v, x) - S_m(v)) / (m (m+1))
    ++audit.continuity_checks;
    auto row = d.row(x);
    for (std::size_t v = 0; v < row.size(); ++v) {
        if (std::abs(m * row[v] - sums_before[v]) > m * diam) {
            ++audit.continuity_violations;
            break;
        }
    }

    if (recompute_sums) {
        ++audit.sums_checks;
        if (state.sums_from_scratch() != state.sums()) ++audit.sums_violations;
    }
}

}  // namespace

ConvergenceReport run(GreedyState& state, const RunConfig& config) {
    if (config.max_steps < 1) throw InputError("max_steps must be at least 1");
    const DistanceMatrix& d = state.distances();
    const double diam = d.diameter();

    ConvergenceReport r;
    r.diameter = d.diameter();
    r.stop_gap = config.stop_gap.value_or(1e-3 * diam);
    r.eps_mass = config.eps_mass;
    r.eps_report = config.eps_report.value_or(1e-2 * diam);
    if (config.audit) r.audit.emplace();

    const std::size_t stride =
        std::max<std::size_t>(1, config.max_steps / std::max<std::size_t>(1, config.scratch_samples));
    const std::size_t sample_every = std::max<std::size_t>(1, config.sample_every);

    auto gap_now = [&](std::int64_t max_sum) {
        const double m = static_cast<double>(state.length());
        return std::abs(static_cast<double>(max_sum) / m - state.energy());
    };

    const std::size_t min_steps = std::max<std::size_t>(1, config.min_steps);
    std::int64_t max_sum = state.scan().max_sum;
    while (r.steps < config.max_steps) {
        if (r.steps >= min_steps && state.length() >= 2 && gap_now(max_sum) <= r.stop_gap) break;
        if (config.audit) {
            audited_step(state, config, r.steps % stride == 0, *r.audit);
        } else {
            state.step();
        }
        ++r.steps;
        max_sum = state.scan().max_sum;
        if (state.length() % sample_every == 0) r.E_series.emplace_back(state.length(), state.energy());
    }

    r.m = state.length();
    r.F = state.energy_sum();
    r.E_exact = state.energy_exact();
    r.E = r.E_exact.get_d();
    r.max_T = static_cast<double>(max_sum) / static_cast<double>(r.m);
    r.gap = std::abs(r.max_T - r.E);
    r.converged = r.gap <= r.stop_gap;
    r.alpha_estimate = r.E;
    r.alpha_in_range = r.alpha_estimate >= diam / 2.0 - r.stop_gap && r.alpha_estimate <= diam + r.stop_gap;
    if (r.E_series.empty() || r.E_series.back().first != r.m) r.E_series.emplace_back(r.m, r.E);

    const double m = static_cast<double>(r.m);
    for (std::size_t v = 0; v < state.counts().size(); ++v) {
        if (static_cast<double>(state.counts()[v]) / m > r.eps_mass &&
            static_cast<double>(state.sums()[v]) / m < r.max_T - r.eps_report) {
            r.heavy_vertex_violations.push_back(static_cast<Vertex>(v));
        }
    }
    r.heavy_vertices_near_max = r.heavy_vertex_violations.empty();
    return r;
}

}  // namespace balanced
