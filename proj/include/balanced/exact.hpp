#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace balanced {

using Rational = mpq_class;
using Integer = mpz_class;

/// num / den in lowest terms; den != 0.
inline Rational make_rational(long num, long den) {
    Rational q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

/// Solves A x = b for a square integer system by fraction-free (Bareiss)
/// elimination. `a` is row-major k x k. Returns nullopt when A is singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<Integer> a, std::size_t k,
                                                 std::vector<Integer> b);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

/// Accepts "p/q", integers and plain decimals ("0.125", "1e-3"); decimals
/// are converted exactly. Throws InputError on anything else.
Rational parse_rational(const std::string& text);

}  // namespace balanced
