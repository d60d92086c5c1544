#pragma once

// Exact power moments of a polynomial over the unit box:
// M_m = integral over [0,1]^nvars of f^m, by repeated multiplication and
// term-by-term antidifferentiation. One or two variables.

#include "planarlab/algebra/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace planarlab {

// Returns M_1..M_mmax (index 0 holds M_1). The cap bounds the largest total
// degree handled, m_max * deg(f).
inline std::vector<Rational> moments(const RatPoly& f, unsigned m_max, unsigned degree_cap = 200) {
    const std::size_t nv = f.vars().size();
    if (nv < 1 || nv > 2) throw std::invalid_argument("moments: one or two variables expected");
    unsigned peak = m_max * f.total_degree();
    if (peak > degree_cap)
        throw std::length_error("moments: requested power reaches total degree " +
                                std::to_string(peak) + ", above the cap of " +
                                std::to_string(degree_cap));
    std::vector<Rational> out;
    out.reserve(m_max);
    RatPoly power = RatPoly::constant(f.vars(), Rational(1));
    for (unsigned m = 1; m <= m_max; ++m) {
        power = power * f;
        RatPoly cur = power;
        for (std::size_t v = 0; v < nv; ++v) {
            RatPoly anti = cur.antiderivative(v);
            cur = anti.substitute(v, Rational(1)) - anti.substitute(v, Rational(0));
        }
        out.push_back(cur.eval_exact(std::vector<Rational>(nv, Rational(0))));
    }
    return out;
}

// Moments on a custom interval [a, b], univariate.
inline std::vector<Rational> moments_on(const RatPoly& f, unsigned m_max, const Rational& a,
                                        const Rational& b) {
    if (f.vars().size() != 1) throw std::invalid_argument("moments_on: univariate expected");
    std::vector<Rational> out;
    out.reserve(m_max);
    RatPoly power = RatPoly::constant(f.vars(), Rational(1));
    for (unsigned m = 1; m <= m_max; ++m) {
        power = power * f;
        RatPoly anti = power.antiderivative(0);
        out.push_back(anti.eval_exact({b}) - anti.eval_exact({a}));
    }
    return out;
}

// True when every moment in the list vanishes.
inline bool moments_all_zero(const std::vector<Rational>& ms) {
    for (auto& m : ms)
        if (m != 0) return false;
    return true;
}

}  // namespace planarlab
