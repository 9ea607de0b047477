#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "balanced/exact.hpp"
#include "balanced/graph.hpp"

namespace balanced {

/// Probability vector over the vertices.
///
/// Always carries double weights. Measures produced by counting, by exact
/// refinement or by the oracles also carry the exact rational weights, and
/// every check below then runs in exact arithmetic with zero tolerance.
class VertexMeasure {
public:
    /// Weights must be finite, >= 0 and sum to 1 within 1e-12.
    static VertexMeasure from_doubles(std::vector<double> weights);
    /// Weights must be >= 0 and sum to exactly 1.
    static VertexMeasure from_rationals(std::vector<Rational> weights);
    static VertexMeasure dirac(std::size_t n, Vertex v);
    static VertexMeasure uniform(std::size_t n);
    static VertexMeasure uniform_on(std::size_t n, const std::vector<Vertex>& support);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t v) const { return weights_[v]; }
    const std::vector<double>& weights() const { return weights_; }
    bool is_exact() const { return exact_.has_value(); }
    const std::vector<Rational>& exact() const { return *exact_; }

    /// Vertices with strictly positive weight, ascending.
    std::vector<Vertex> support() const;

private:
    std::vector<double> weights_;
    std::optional<std::vector<Rational>> exact_;
};

/// T(w) = sum_u d(w, u) mu(u).
std::vector<double> transport_costs(const VertexMeasure& mu, const DistanceMatrix& d);
/// Exact transport costs; requires mu.is_exact().
std::vector<Rational> transport_costs_exact(const VertexMeasure& mu, const DistanceMatrix& d);

/// J(mu) = <mu, D mu>.
double energy_quadratic(const VertexMeasure& mu, const DistanceMatrix& d);
Rational energy_quadratic_exact(const VertexMeasure& mu, const DistanceMatrix& d);

struct BalanceReport {
    bool is_balanced = false;
    bool exact = false;                 // decided in rational arithmetic
    std::vector<Vertex> support;        // mu(v) > eps_supp
    std::vector<Vertex> argmax_set;     // T(v) >= max_T - tol
    double max_T = 0.0;
    double support_T_spread = 0.0;      // max - min of T over the support
    std::optional<Rational> max_T_exact;
    std::optional<Rational> support_T_spread_exact;
};

inline constexpr double kDefaultBalanceTol = 1e-9;

/// Definition check: every support vertex attains the maximal transport cost
/// (within tol; exactly when mu carries rational weights).
BalanceReport is_balanced(const VertexMeasure& mu, const DistanceMatrix& d,
                          double tol = kDefaultBalanceTol, double eps_supp = 0.0);

/// 2 <D mu, nu> for an admissible direction: sum(nu) = 0 and nu >= 0 off
/// supp(mu). Throws InputError otherwise.
double directional_derivative(const VertexMeasure& mu, const std::vector<double>& nu,
                              const DistanceMatrix& d);

/// max(1e-3, 0.5 / n)
double default_support_threshold(std::size_t n);

/// {v : mu(v) > eps}. Throws InputError when that set is empty.
std::vector<Vertex> extract_support(const VertexMeasure& mu, double eps);

enum class RefineStatus { ok, negative_weight, singular_system, off_support_violation };
std::string to_string(RefineStatus s);

struct Refinement {
    RefineStatus status = RefineStatus::singular_system;
    std::optional<VertexMeasure> measure;  // set iff status == ok
    std::optional<Rational> level;         // common transport cost c on the support
    std::string reason;

    bool ok() const { return status == RefineStatus::ok; }
};

/// Solves (D mu)(v) = c on `support`, mu = 0 elsewhere, sum mu = 1 exactly.
/// Succeeds when the solution is unique, nonnegative, and no vertex outside
/// the support has transport cost above c. Zero weights are allowed, so the
/// returned measure's support may be a strict subset of `support`.
Refinement refine_on_support(const DistanceMatrix& d, std::vector<Vertex> support);

/// A measure on `vertices` that is balanced for the submatrix of D on them:
/// equal transport cost on its support, no larger cost anywhere in
/// `vertices`. Vertices outside the set are not checked. Exact
/// complementary pivoting from the first listed vertex, with a lexicographic
/// ratio test, so it always terminates.
Refinement balance_on_subset(const DistanceMatrix& d, const std::vector<Vertex>& vertices);

struct GridMode {
    unsigned resolution = 40;  // grid step 1/resolution
};
struct SupportsMode {
    std::size_t max_size = 4;
};
using OracleMode = std::variant<GridMode, SupportsMode>;

struct OracleMeasure {
    VertexMeasure measure;
    Rational energy;  // J, exact
    double energy_value = 0.0;
};

/// Desk-scale oracle, two modes:
///  - grid: all maximizers of J over {k / resolution}; n <= 8, resolution <= 40.
///  - supports: every subset of size <= max_size whose refinement succeeds
///    with all weights strictly positive (so each measure appears once, under
///    its own support). Sorted by J descending, then support lexicographically.
/// Throws InputError when the instance exceeds the mode's limits.
std::vector<OracleMeasure> brute_force_balanced(const DistanceMatrix& d, const OracleMode& mode);

}  // namespace balanced
