#include "balanced/exact.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "balanced/error.hpp"

namespace balanced {

std::optional<std::vector<Rational>> solve_exact(std::vector<Integer> a, std::size_t k,
                                                 std::vector<Integer> b) {
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * k + j]; };
    Integer prev = 1;
    for (std::size_t p = 0; p < k; ++p) {
        std::size_t pivot = p;
        while (pivot < k && sgn(at(pivot, p)) == 0) ++pivot;
        if (pivot == k) return std::nullopt;
        if (pivot != p) {
            for (std::size_t j = 0; j < k; ++j) std::swap(at(p, j), at(pivot, j));
            std::swap(b[p], b[pivot]);
        }
        for (std::size_t i = p + 1; i < k; ++i) {
            // every quotient below is exact (Sylvester's identity)
            for (std::size_t j = p + 1; j < k; ++j) {
                at(i, j) = at(i, j) * at(p, p) - at(i, p) * at(p, j);
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            b[i] = b[i] * at(p, p) - at(i, p) * b[p];
            mpz_divexact(b[i].get_mpz_t(), b[i].get_mpz_t(), prev.get_mpz_t());
            at(i, p) = 0;
        }
        prev = at(p, p);
    }

    std::vector<Rational> x(k);
    for (std::size_t i = k; i-- > 0;) {
        Rational acc(b[i]);
        for (std::size_t j = i + 1; j < k; ++j) acc -= Rational(at(i, j)) * x[j];
        x[i] = acc / Rational(at(i, i));
        x[i].canonicalize();
    }
    return x;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

Rational parse_rational(const std::string& raw) {
    auto first = raw.find_first_not_of(" \t");
    auto last = raw.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw InputError("empty number");
    const std::string text = raw.substr(first, last - first + 1);

    auto bad = [&]() { return InputError("not a number: '" + text + "'"); };

    if (auto slash = text.find('/'); slash != std::string::npos) {
        Rational q;
        try {
            q = Rational(Integer(text.substr(0, slash), 10), Integer(text.substr(slash + 1), 10));
        } catch (const std::invalid_argument&) {
            throw bad();
        }
        if (sgn(q.get_den()) == 0) throw InputError("zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }

    // decimal: [sign] digits [. digits] [e|E [sign] digits]
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    std::string digits;
    long long scale = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++], any = true;
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            --scale;
            any = true;
        }
    }
    if (!any) throw bad();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::size_t used = 0;
        long long exponent = 0;
        try {
            exponent = std::stoll(text.substr(i), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used == 0 || std::abs(exponent) > 4000) throw bad();
        i += used;
        scale += exponent;
    }
    if (i != text.size()) throw bad();

    Integer num(digits.empty() ? "0" : digits, 10);
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
    Rational q = scale >= 0 ? Rational(num * pow10) : Rational(num, pow10);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace balanced
