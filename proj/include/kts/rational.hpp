#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kts {

// Exact non-negative rational with 64-bit numerator/denominator, kept reduced.
// Large enough for every quantity the engine produces (step counts and dyadic
// weights with exponents <= 40); construction checks for overflow-free inputs.
struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    Rational() = default;
    Rational(uint64_t n, uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }

    void reduce() {
        uint64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    // Comparison via 128-bit cross products.
    bool operator<(const Rational& o) const {
        return (__uint128_t)num * o.den < (__uint128_t)o.num * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }

    std::string to_string() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Exact dyadic rational num / 2^exp, normalized so num is odd or zero.
struct Dyadic {
    uint64_t num = 0;
    int exp = 0;

    Dyadic() = default;
    Dyadic(uint64_t n, int e) : num(n), exp(e) { normalize(); }

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1, 0); }
    // 2^(-e)
    static Dyadic pow2_neg(int e) { return Dyadic(1, e); }

    void normalize() {
        if (num == 0) { exp = 0; return; }
        while (exp > 0 && (num & 1) == 0) { num >>= 1; --exp; }
    }

    Dyadic operator+(const Dyadic& o) const {
        int e = exp > o.exp ? exp : o.exp;
        uint64_t a = num << (e - exp);
        uint64_t b = o.num << (e - o.exp);
        return Dyadic(a + b, e);
    }
    Dyadic& operator+=(const Dyadic& o) { *this = *this + o; return *this; }

    bool operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }

    bool is_zero() const { return num == 0; }

    // num/2^exp <= 1
    bool at_most_one() const {
        if (exp >= 64) return num <= (uint64_t(1) << 63);  // conservative; unused range
        return num <= (uint64_t(1) << exp);
    }

    Rational to_rational() const {
        if (exp >= 64) throw std::overflow_error("Dyadic exponent too large for Rational");
        return Rational(num, uint64_t(1) << exp);
    }
};

// a/b of two dyadics as an exact rational (b nonzero).
inline Rational dyadic_ratio(const Dyadic& a, const Dyadic& b) {
    if (b.is_zero()) throw std::invalid_argument("dyadic_ratio: zero divisor");
    // a.num/2^a.exp / (b.num/2^b.exp) = a.num * 2^(b.exp - a.exp) / b.num
    int shift = b.exp - a.exp;
    uint64_t n = a.num, d = b.num;
    if (shift >= 0) {
        return Rational(n << shift, d);
    }
    return Rational(n, d << (-shift));
}

}  // namespace kts
