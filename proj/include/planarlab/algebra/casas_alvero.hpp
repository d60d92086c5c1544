#pragma once

// Derivative-sharing predicate: does p share a root (over the algebraic
// closure) with each of p', p'', ..., p^(n-1)? Sharing is decided exactly by
// a non-constant gcd. Works over Q and over prime fields; in positive
// characteristic a derivative may vanish identically, in which case
// gcd(p, 0) = p counts as sharing.

#include "planarlab/algebra/univariate.hpp"

#include <cstdint>

namespace planarlab {

struct SharedRootReport {
    bool holds = false;
    int fails_at = 0;            // smallest k with constant gcd(p, p^(k)); 0 if holds
    std::vector<int> gcd_degrees;  // deg gcd(p, p^(k)) for k = 1..n-1
};

template <class F>
SharedRootReport shares_root_with_derivatives(const UniPoly<F>& p) {
    SharedRootReport rep;
    int n = p.degree();
    if (n < 2) {
        rep.holds = true;
        return rep;
    }
    UniPoly<F> d = p;
    rep.holds = true;
    for (int k = 1; k <= n - 1; ++k) {
        d = d.derivative();
        UniPoly<F> g = d.is_zero() ? p.monic() : uni_gcd(p, d);
        rep.gcd_degrees.push_back(g.degree());
        if (g.degree() < 1 && rep.holds) {
            rep.holds = false;
            rep.fails_at = k;
        }
    }
    return rep;
}

inline SharedRootReport casas_alvero(const QPoly& p) { return shares_root_with_derivatives(p); }

// Reduction mod a prime. Coefficient denominators must be invertible mod p.
inline UniPoly<ModInt> reduce_mod(const QPoly& p, std::int64_t prime) {
    std::vector<ModInt> c;
    c.reserve(p.c.size());
    for (auto& q : p.c) {
        Int num = numerator(q) % prime;
        Int den = denominator(q) % prime;
        if (den == 0) throw std::domain_error("reduce_mod: denominator divisible by modulus");
        ModInt n(num.template convert_to<std::int64_t>(), prime);
        ModInt d(den.template convert_to<std::int64_t>(), prime);
        c.push_back(n / d);
    }
    return UniPoly<ModInt>(std::move(c));
}

inline SharedRootReport casas_alvero_mod(const QPoly& p, std::int64_t prime) {
    return shares_root_with_derivatives(reduce_mod(p, prime));
}

}  // namespace planarlab
