#pragma once

// Exact scalar types shared across the library: arbitrary-precision
// integers/rationals, Gaussian rationals, and a runtime prime field.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace planarlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// Parses "n", "n/d", or a plain decimal ("-1.25" -> -5/4). Whitespace is not
// accepted; the empty string is an error.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("parse_rational: bad decimal");
    Int num(digits);
    Int den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
}

inline std::string format_rational(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Exact value of an IEEE double as a rational (binary expansion, not a
// decimal re-reading).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    if (x == 0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);
    auto mi = static_cast<long long>(std::ldexp(m, 53));  // |m| in [1/2, 1), so |mi| < 2^53
    exp -= 53;
    if (exp >= 0) return Rational(Int(mi) << exp);
    return Rational(Int(mi), Int(1) << -exp);
}

// Gaussian rational a + b*i. Field operations only; no normalization needed.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int n) : re(n) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n2 = b.re * b.re + b.im * b.im;
        if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Element of Z/pZ for a runtime prime modulus. Each element carries its
// modulus; mixed-modulus arithmetic is a logic error.
struct ModInt {
    std::int64_t v = 0;
    std::int64_t p = 0;  // 0 marks "unset" (additive identity of any modulus)

    ModInt() = default;
    // Integer literal with as-yet-unknown modulus; reduced on first contact
    // with a modulus-carrying element.
    explicit ModInt(int value) : v(value), p(0) {}
    ModInt(std::int64_t value, std::int64_t modulus) : v(((value % modulus) + modulus) % modulus), p(modulus) {}

    static std::int64_t merge_mod(const ModInt& a, const ModInt& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0) return a.p;
        if (a.p != b.p) throw std::logic_error("ModInt: modulus mismatch");
        return a.p;
    }

    bool is_zero() const { return v == 0; }

    static ModInt literal(std::int64_t value) {
        ModInt r;
        r.v = value;
        return r;
    }

    // Moduli must stay below 2^31 so products of residues fit in int64.
    friend ModInt operator+(const ModInt& a, const ModInt& b) {
        std::int64_t m = merge_mod(a, b);
        if (m == 0) return literal(a.v + b.v);
        return {a.v + b.v, m};
    }
    friend ModInt operator-(const ModInt& a, const ModInt& b) {
        std::int64_t m = merge_mod(a, b);
        if (m == 0) return literal(a.v - b.v);
        return {a.v - b.v, m};
    }
    friend ModInt operator-(const ModInt& a) {
        if (a.p == 0) return literal(-a.v);
        return {-a.v, a.p};
    }
    friend ModInt operator*(const ModInt& a, const ModInt& b) {
        std::int64_t m = merge_mod(a, b);
        if (m == 0) return literal(a.v * b.v);
        return {a.v * b.v, m};
    }
    friend ModInt operator/(const ModInt& a, const ModInt& b) { return a * b.inverse(); }
    friend bool operator==(const ModInt& a, const ModInt& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p) return false;
        return a.v == b.v;
    }

    ModInt inverse() const {
        if (p == 0) throw std::logic_error("ModInt: inverse of literal without modulus");
        if (v == 0) throw std::domain_error("ModInt: inverse of zero");
        // Extended Euclid; p is prime so gcd(v, p) = 1.
        std::int64_t a = v, b = p, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        return {x0, p};
    }
};

// Uniform zero/one helpers used by templated polynomial code.
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const ModInt& c) { return c.is_zero(); }
inline bool coeff_is_zero(double c) { return c == 0.0; }

}  // namespace planarlab
