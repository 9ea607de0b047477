#include "balanced/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "balanced/error.hpp"

namespace balanced {

VertexMeasure VertexMeasure::from_doubles(std::vector<double> weights) {
    if (weights.empty()) throw InputError("measure is empty");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw InputError("measure has a negative or non-finite weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InputError("measure weights sum to " + std::to_string(sum) + ", not 1");
    }
    VertexMeasure mu;
    mu.weights_ = std::move(weights);
    return mu;
}

VertexMeasure VertexMeasure::from_rationals(std::vector<Rational> weights) {
    if (weights.empty()) throw InputError("measure is empty");
    Rational sum = 0;
    for (const auto& w : weights) {
        if (sgn(w) < 0) throw InputError("measure has a negative weight");
        sum += w;
    }
    if (sum != 1) throw InputError("measure weights sum to " + to_string(sum) + ", not 1");
    VertexMeasure mu;
    mu.weights_.reserve(weights.size());
    for (const auto& w : weights) mu.weights_.push_back(w.get_d());
    mu.exact_ = std::move(weights);
    return mu;
}

VertexMeasure VertexMeasure::dirac(std::size_t n, Vertex v) {
    if (v >= n) throw InputError("dirac vertex out of range");
    std::vector<Rational> w(n, 0);
    w[v] = 1;
    return from_rationals(std::move(w));
}

VertexMeasure VertexMeasure::uniform(std::size_t n) {
    if (n == 0) throw InputError("measure is empty");
    return from_rationals(std::vector<Rational>(n, make_rational(1, static_cast<long>(n))));
}

VertexMeasure VertexMeasure::uniform_on(std::size_t n, const std::vector<Vertex>& support) {
    std::vector<Vertex> s = support;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw InputError("empty support");
    std::vector<Rational> w(n, 0);
    for (Vertex v : s) {
        if (v >= n) throw InputError("support vertex out of range");
        w[v] = make_rational(1, static_cast<long>(s.size()));
    }
    return from_rationals(std::move(w));
}

std::vector<Vertex> VertexMeasure::support() const {
    std::vector<Vertex> s;
    for (std::size_t v = 0; v < size(); ++v) {
        bool positive = exact_ ? sgn((*exact_)[v]) > 0 : weights_[v] > 0.0;
        if (positive) s.push_back(static_cast<Vertex>(v));
    }
    return s;
}

namespace {

void require_same_size(const VertexMeasure& mu, const DistanceMatrix& d) {
    if (mu.size() != d.size()) {
        throw InputError("measure has " + std::to_string(mu.size()) + " entries but graph has " +
                         std::to_string(d.size()) + " vertices");
    }
}

}  // namespace

std::vector<double> transport_costs(const VertexMeasure& mu, const DistanceMatrix& d) {
    require_same_size(mu, d);
    const std::size_t n = d.size();
    std::vector<double> t(n, 0.0);
    // D symmetric: accumulate rows of the support only
    for (std::size_t u = 0; u < n; ++u) {
        double w = mu[u];
        if (w == 0.0) continue;
        auto row = d.row(u);
        for (std::size_t v = 0; v < n; ++v) t[v] += w * row[v];
    }
    return t;
}

std::vector<Rational> transport_costs_exact(const VertexMeasure& mu, const DistanceMatrix& d) {
    require_same_size(mu, d);
    if (!mu.is_exact()) throw InputError("exact transport costs need rational weights");
    const std::size_t n = d.size();
    const auto& w = mu.exact();

    Integer denom = 1;
    for (const auto& q : w)
        if (sgn(q) != 0) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), q.get_den().get_mpz_t());

    std::vector<Integer> acc(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        if (sgn(w[u]) == 0) continue;
        Integer scaled = w[u].get_num() * (denom / w[u].get_den());
        auto row = d.row(u);
        for (std::size_t v = 0; v < n; ++v)
            if (row[v] != 0) mpz_addmul_ui(acc[v].get_mpz_t(), scaled.get_mpz_t(), row[v]);
    }
    std::vector<Rational> t(n);
    for (std::size_t v = 0; v < n; ++v) {
        t[v] = Rational(acc[v], denom);
        t[v].canonicalize();
    }
    return t;
}

double energy_quadratic(const VertexMeasure& mu, const DistanceMatrix& d) {
    auto t = transport_costs(mu, d);
    double j = 0.0;
    for (std::size_t v = 0; v < t.size(); ++v) j += mu[v] * t[v];
    return j;
}

Rational energy_quadratic_exact(const VertexMeasure& mu, const DistanceMatrix& d) {
    auto t = transport_costs_exact(mu, d);
    Rational j = 0;
    for (std::size_t v = 0; v < t.size(); ++v)
        if (sgn(mu.exact()[v]) != 0) j += mu.exact()[v] * t[v];
    return j;
}

BalanceReport is_balanced(const VertexMeasure& mu, const DistanceMatrix& d, double tol,
                          double eps_supp) {
    require_same_size(mu, d);
    const std::size_t n = d.size();
    BalanceReport r;
    for (std::size_t v = 0; v < n; ++v) {
        bool in = (mu.is_exact() && eps_supp == 0.0) ? sgn(mu.exact()[v]) > 0 : mu[v] > eps_supp;
        if (in) r.support.push_back(static_cast<Vertex>(v));
    }

    if (mu.is_exact()) {
        r.exact = true;
        auto t = transport_costs_exact(mu, d);
        Rational best = *std::max_element(t.begin(), t.end());
        for (std::size_t v = 0; v < n; ++v)
            if (t[v] == best) r.argmax_set.push_back(static_cast<Vertex>(v));
        Rational lo = best, hi = 0;
        for (Vertex v : r.support) {
            lo = std::min(lo, t[v]);
            hi = std::max(hi, t[v]);
        }
        r.max_T_exact = best;
        r.support_T_spread_exact = r.support.empty() ? Rational(0) : Rational(hi - lo);
        r.max_T = best.get_d();
        r.support_T_spread = r.support_T_spread_exact->get_d();
    } else {
        auto t = transport_costs(mu, d);
        double best = *std::max_element(t.begin(), t.end());
        for (std::size_t v = 0; v < n; ++v)
            if (t[v] >= best - tol) r.argmax_set.push_back(static_cast<Vertex>(v));
        double lo = best, hi = 0.0;
        for (Vertex v : r.support) {
            lo = std::min(lo, t[v]);
            hi = std::max(hi, t[v]);
        }
        r.max_T = best;
        r.support_T_spread = r.support.empty() ? 0.0 : hi - lo;
    }
    r.is_balanced = std::includes(r.argmax_set.begin(), r.argmax_set.end(), r.support.begin(),
                                  r.support.end());
    return r;
}

double directional_derivative(const VertexMeasure& mu, const std::vector<double>& nu,
                              const DistanceMatrix& d) {
    require_same_size(mu, d);
    if (nu.size() != mu.size()) throw InputError("direction has wrong dimension");
    double sum = 0.0, mass = 0.0;
    for (std::size_t v = 0; v < nu.size(); ++v) {
        sum += nu[v];
        mass += std::abs(nu[v]);
        if (nu[v] < 0.0 && !(mu[v] > 0.0)) {
            throw InputError("direction is not admissible: negative mass off the support at vertex " +
                             std::to_string(v));
        }
    }
    if (std::abs(sum) > 1e-12 * std::max(1.0, mass)) throw InputError("direction must sum to zero");
    auto t = transport_costs(mu, d);
    double dot = 0.0;
    for (std::size_t v = 0; v < nu.size(); ++v) dot += t[v] * nu[v];
    return 2.0 * dot;
}

double default_support_threshold(std::size_t n) {
    return std::max(1e-3, 0.5 / static_cast<double>(n));
}

std::vector<Vertex> extract_support(const VertexMeasure& mu, double eps) {
    std::vector<Vertex> s;
    for (std::size_t v = 0; v < mu.size(); ++v)
        if (mu[v] > eps) s.push_back(static_cast<Vertex>(v));
    if (s.empty()) throw InputError("support threshold " + std::to_string(eps) + " removes every vertex");
    return s;
}

std::string to_string(RefineStatus s) {
    switch (s) {
        case RefineStatus::ok: return "ok";
        case RefineStatus::negative_weight: return "negative weight";
        case RefineStatus::singular_system: return "singular system";
        case RefineStatus::off_support_violation: return "off-support violation";
    }
    return "unknown";
}

Refinement refine_on_support(const DistanceMatrix& d, std::vector<Vertex> support) {
    const std::size_t n = d.size();
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty()) throw InputError("refinement needs a nonempty support");
    if (support.back() >= n) throw InputError("support vertex out of range");

    // unknowns: mu(s_0..s_{k-1}), c
    const std::size_t k = support.size();
    const std::size_t dim = k + 1;
    std::vector<Integer> a(dim * dim, 0);
    std::vector<Integer> b(dim, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i * dim + j] = d(support[i], support[j]);
        a[i * dim + k] = -1;
    }
    for (std::size_t j = 0; j < k; ++j) a[k * dim + j] = 1;
    b[k] = 1;

    Refinement r;
    auto x = solve_exact(std::move(a), dim, std::move(b));
    if (!x) {
        r.status = RefineStatus::singular_system;
        r.reason = "equal-cost system on the support is singular";
        return r;
    }
    r.level = (*x)[k];
    for (std::size_t i = 0; i < k; ++i) {
        if (sgn((*x)[i]) < 0) {
            r.status = RefineStatus::negative_weight;
            r.reason = "vertex " + std::to_string(support[i]) + " gets weight " + to_string((*x)[i]);
            return r;
        }
    }
    std::vector<Rational> w(n, 0);
    for (std::size_t i = 0; i < k; ++i) w[support[i]] = (*x)[i];
    VertexMeasure mu = VertexMeasure::from_rationals(std::move(w));

    auto t = transport_costs_exact(mu, d);
    for (std::size_t v = 0; v < n; ++v) {
        if (t[v] > *r.level) {
            r.status = RefineStatus::off_support_violation;
            r.reason = "vertex " + std::to_string(v) + " has transport cost " + to_string(t[v]) +
                       " > " + to_string(*r.level);
            return r;
        }
    }
    r.status = RefineStatus::ok;
    r.measure = std::move(mu);
    return r;
}

Refinement balance_on_subset(const DistanceMatrix& d, const std::vector<Vertex>& vertices) {
    const std::size_t n = d.size();
    const std::size_t k = vertices.size();
    if (k == 0) throw InputError("balance_on_subset needs a nonempty vertex set");
    std::vector<bool> seen(n, false);
    for (Vertex v : vertices) {
        if (v >= n) throw InputError("vertex out of range");
        if (seen[v]) throw InputError("repeated vertex " + std::to_string(v));
        seen[v] = true;
    }

    // Symmetric game with payoff A = D + 1 > 0. Tableau rows: A x + s = 1,
    // columns x_0..x_{k-1}, s_0..s_{k-1}, rhs. Labels: x_j and s_j carry j.
    const std::size_t cols = 2 * k + 1, rhs = 2 * k;
    std::vector<Rational> t(k * cols, 0);
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return t[i * cols + j]; };
    std::vector<std::size_t> basis(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) at(i, j) = d(vertices[i], vertices[j]) + 1;
        at(i, k + i) = 1;
        at(i, rhs) = 1;
        basis[i] = k + i;
    }

    // (rhs, slack columns) / pivot, compared lexicographically
    auto lex_less = [&](std::size_t a, std::size_t b, std::size_t col) {
        const Rational& pa = at(a, col);
        const Rational& pb = at(b, col);
        if (int c = cmp(at(a, rhs) * pb, at(b, rhs) * pa); c != 0) return c < 0;
        for (std::size_t j = k; j < 2 * k; ++j) {
            int c = cmp(at(a, j) * pb, at(b, j) * pa);
            if (c != 0) return c < 0;
        }
        return false;
    };

    std::size_t entering = 0;
    for (;;) {
        std::optional<std::size_t> row;
        for (std::size_t i = 0; i < k; ++i) {
            if (sgn(at(i, entering)) <= 0) continue;
            if (!row || lex_less(i, *row, entering)) row = i;
        }
        if (!row) throw std::logic_error("complementary pivoting hit an unbounded ray");
        const std::size_t r = *row;
        const Rational piv = at(r, entering);
        for (std::size_t j = 0; j < cols; ++j) at(r, j) /= piv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == r || sgn(at(i, entering)) == 0) continue;
            const Rational f = at(i, entering);
            for (std::size_t j = 0; j < cols; ++j) {
                if (sgn(at(r, j)) != 0) at(i, j) -= f * at(r, j);
            }
        }
        const std::size_t leaving = basis[r];
        basis[r] = entering;
        if (leaving % k == 0) break;
        entering = leaving < k ? leaving + k : leaving - k;
    }

    std::vector<Rational> x(k, 0);
    Rational total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (basis[i] < k) {
            x[basis[i]] = at(i, rhs);
            total += at(i, rhs);
        }
    }
    std::vector<Rational> w(n, 0);
    for (std::size_t i = 0; i < k; ++i) w[vertices[i]] += x[i] / total;

    Refinement r;
    r.status = RefineStatus::ok;
    r.level = Rational(1) / total - 1;
    r.measure = VertexMeasure::from_rationals(std::move(w));
    return r;
}

namespace {

// Double-precision screen of a candidate support. Returns false only when
// the support certainly fails; anything near a threshold goes to the exact
// solver. `scratch` holds the (k+1) x (k+2) augmented matrix.
bool screen_support(const DistanceMatrix& d, const std::vector<Vertex>& s,
                    std::vector<double>& scratch, std::vector<double>& x, std::size_t& hint) {
    constexpr double kSlack = 1e-7;
    const std::size_t k = s.size();
    const std::size_t dim = k + 1, cols = k + 2;
    scratch.assign(dim * cols, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return scratch[i * cols + j]; };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) at(i, j) = d(s[i], s[j]);
        at(i, k) = -1.0;
    }
    for (std::size_t j = 0; j < k; ++j) at(k, j) = 1.0;
    at(k, k + 1) = 1.0;

    for (std::size_t p = 0; p < dim; ++p) {
        std::size_t piv = p;
        for (std::size_t i = p + 1; i < dim; ++i)
            if (std::abs(at(i, p)) > std::abs(at(piv, p))) piv = i;
        if (std::abs(at(piv, p)) < 1e-9) return true;  // near-singular: let the exact path decide
        if (piv != p)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(piv, j));
        for (std::size_t i = p + 1; i < dim; ++i) {
            double f = at(i, p) / at(p, p);
            if (f == 0.0) continue;
            for (std::size_t j = p; j < cols; ++j) at(i, j) -= f * at(p, j);
        }
    }
    x.assign(dim, 0.0);
    for (std::size_t i = dim; i-- > 0;) {
        double acc = at(i, k + 1);
        for (std::size_t j = i + 1; j < dim; ++j) acc -= at(i, j) * x[j];
        x[i] = acc / at(i, i);
    }
    // near-zero weights still go to the exact path, but only after the
    // off-support scan, which a tiny perturbation cannot flip
    for (std::size_t i = 0; i < k; ++i)
        if (x[i] <= -kSlack) return false;
    const double c = x[k];
    const std::size_t n = d.size();
    auto violates = [&](std::size_t v) {
        double t = 0.0;
        for (std::size_t i = 0; i < k; ++i) t += x[i] * d(v, s[i]);
        return t > c + kSlack;
    };
    // neighboring subsets tend to share their violator
    if (hint < n && violates(hint)) return false;
    for (std::size_t v = 0; v < n; ++v) {
        if (violates(v)) {
            hint = v;
            return false;
        }
    }
    return true;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

std::vector<OracleMeasure> supports_oracle(const DistanceMatrix& d, std::size_t max_size) {
    const std::size_t n = d.size();
    max_size = std::min(max_size, n);
    if (max_size == 0) throw InputError("supports mode needs max_size >= 1");
    double total = 0.0;
    for (std::size_t s = 1; s <= max_size; ++s) total += binomial(n, s);
    if (total > 5e7) {
        throw InputError("supports oracle: " + std::to_string(static_cast<long long>(total)) +
                         " subsets exceeds the limit of 5e7");
    }

    std::vector<OracleMeasure> found;
    std::vector<double> scratch, x;
    std::vector<Vertex> s;
    std::size_t hint = 0;
    for (std::size_t k = 1; k <= max_size; ++k) {
        s.resize(k);
        std::iota(s.begin(), s.end(), Vertex{0});
        while (true) {
            if (screen_support(d, s, scratch, x, hint)) {
                Refinement r = refine_on_support(d, s);
                if (r.ok() && r.measure->support().size() == k) {
                    Rational j = energy_quadratic_exact(*r.measure, d);
                    double jv = j.get_d();
                    found.push_back({std::move(*r.measure), std::move(j), jv});
                }
            }
            // next combination in lexicographic order
            std::size_t i = k;
            while (i > 0 && s[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++s[i - 1];
            for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
        }
    }
    return found;
}

std::vector<OracleMeasure> grid_oracle(const DistanceMatrix& d, unsigned resolution) {
    const std::size_t n = d.size();
    if (n > 8) throw InputError("grid oracle supports n <= 8");
    if (resolution == 0 || resolution > 40) throw InputError("grid oracle needs 1 <= resolution <= 40");

    // counts[v] / resolution is the weight; J * resolution^2 is an integer
    std::vector<unsigned> counts(n, 0);
    std::vector<std::vector<long long>> partial(n + 1, std::vector<long long>(n, 0));
    long long best = -1;
    std::vector<std::vector<unsigned>> best_points;

    auto recurse = [&](auto&& self, std::size_t v, unsigned remaining, long long energy) -> void {
        const auto& t = partial[v];
        if (v + 1 == n) {
            counts[v] = remaining;
            long long e = energy + 2LL * remaining * t[v];
            if (e > best) {
                best = e;
                best_points.clear();
            }
            if (e == best) best_points.push_back(counts);
            return;
        }
        for (unsigned c = 0; c <= remaining; ++c) {
            counts[v] = c;
            auto& next = partial[v + 1];
            auto row = d.row(v);
            for (std::size_t u = 0; u < n; ++u) next[u] = t[u] + static_cast<long long>(c) * row[u];
            self(self, v + 1, remaining - c, energy + 2LL * c * t[v]);
        }
    };
    recurse(recurse, 0, resolution, 0);

    std::vector<OracleMeasure> out;
    for (const auto& pt : best_points) {
        std::vector<Rational> w(n);
        for (std::size_t v = 0; v < n; ++v) {
            w[v] = make_rational(pt[v], resolution);
        }
        auto mu = VertexMeasure::from_rationals(std::move(w));
        Rational j = make_rational(best, static_cast<long>(resolution) * resolution);
        double jv = j.get_d();
        out.push_back({std::move(mu), std::move(j), jv});
    }
    return out;
}

}  // namespace

std::vector<OracleMeasure> brute_force_balanced(const DistanceMatrix& d, const OracleMode& mode) {
    std::vector<OracleMeasure> out;
    if (const auto* g = std::get_if<GridMode>(&mode)) {
        out = grid_oracle(d, g->resolution);
    } else {
        out = supports_oracle(d, std::get<SupportsMode>(mode).max_size);
    }
    std::stable_sort(out.begin(), out.end(), [](const OracleMeasure& a, const OracleMeasure& b) {
        if (a.energy != b.energy) return a.energy > b.energy;
        return a.measure.support() < b.measure.support();
    });
    return out;
}

}  // namespace balanced
