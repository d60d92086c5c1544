#pragma once

// Dense univariate polynomials over a field, with exact Euclidean tools:
// gcd, Sturm chains, and real-root isolation over the rationals.

#include "planarlab/algebra/poly.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace planarlab {

template <class F>
struct UniPoly {
    std::vector<F> c;  // ascending powers; normalized (no zero leading coeff)

    UniPoly() = default;
    explicit UniPoly(std::vector<F> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && coeff_is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const F& leading() const { return c.back(); }

    F eval(const F& x) const {
        F acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (c.size() <= 1) return {};
        std::vector<F> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = F(static_cast<int>(i)) * c[i];
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        std::vector<F> d = c;
        F lead = c.back();
        for (auto& x : d) x = x / lead;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator-(const UniPoly& a) {
        std::vector<F> d = a.c;
        for (auto& x : d) x = -x;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator*(const F& s, const UniPoly& a) {
        std::vector<F> d = a.c;
        for (auto& x : d) x = s * x;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<F> d(std::max(a.c.size(), b.c.size()), F(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) d[i] = d[i] + a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) d[i] = d[i] + b.c[i];
        return UniPoly(std::move(d));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> d(a.c.size() + b.c.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            for (std::size_t j = 0; j < b.c.size(); ++j) d[i + j] = d[i + j] + a.c[i] * b.c[j];
        }
        return UniPoly(std::move(d));
    }
};

template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly divmod: zero divisor");
    std::vector<F> rem = a.c;
    std::vector<F> quot;
    int db = b.degree();
    if (a.degree() >= db) quot.assign(a.degree() - db + 1, F(0));
    while (static_cast<int>(rem.size()) - 1 >= db) {
        int dr = static_cast<int>(rem.size()) - 1;
        F factor = rem.back() / b.leading();
        quot[dr - db] = factor;
        for (int i = 0; i <= db; ++i) rem[dr - db + i] = rem[dr - db + i] - factor * b.c[i];
        while (!rem.empty() && coeff_is_zero(rem.back())) rem.pop_back();
    }
    return {UniPoly<F>(std::move(quot)), UniPoly<F>(std::move(rem))};
}

// Monic gcd by the Euclidean algorithm. gcd(p, 0) = monic p.
template <class F>
UniPoly<F> uni_gcd(UniPoly<F> a, UniPoly<F> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r).monic();
    }
    return a.monic();
}

// ---- Rational-only real-root machinery -----------------------------------

using QPoly = UniPoly<Rational>;

inline int qsign(const Rational& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

// Extracts a univariate polynomial from a sparse one. All terms must involve
// only `var`.
inline QPoly to_unipoly(const RatPoly& p, std::size_t var) {
    std::vector<Rational> c(p.degree_in(var) + 1, Rational(0));
    for (auto& [e, coeff] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0) throw std::invalid_argument("to_unipoly: polynomial is not univariate");
        c[e[var]] = coeff;
    }
    return QPoly(std::move(c));
}

inline RatPoly from_unipoly(const QPoly& p, std::vector<std::string> vars, std::size_t var) {
    RatPoly r(std::move(vars));
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        Exponents e(r.vars().size(), 0);
        e[var] = static_cast<std::uint32_t>(i);
        r.add_term(std::move(e), p.c[i]);
    }
    return r;
}

inline QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return p.monic();
    auto g = uni_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.monic();
    return divmod(p, g).first.monic();
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    QPoly p0 = squarefree_part(p);
    if (p0.is_zero()) return chain;
    chain.push_back(p0);
    QPoly p1 = p0.derivative();
    while (!p1.is_zero()) {
        chain.push_back(p1);
        QPoly r = -divmod(chain[chain.size() - 2], p1).second;
        p1 = std::move(r);
    }
    return chain;
}

inline int sturm_variations_at(const std::vector<QPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (auto& p : chain) {
        int s = qsign(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int sturm_variations_at_inf(const std::vector<QPoly>& chain, int dir) {
    int var = 0, prev = 0;
    for (auto& p : chain) {
        int s = qsign(p.leading());
        if (dir < 0 && (p.degree() % 2) != 0) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Number of distinct real roots in (a, b].
inline int sturm_count(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

inline Rational cauchy_root_bound(const QPoly& p) {
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.c.size(); ++i) {
        Rational a = abs(p.c[i] / p.leading());
        if (a > m) m = a;
    }
    return m + 1;
}

// Disjoint intervals (a, b], each holding exactly one distinct real root,
// sorted left to right.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& p) {
    std::vector<std::pair<Rational, Rational>> out;
    if (p.degree() <= 0) return out;
    auto chain = sturm_chain(p);
    Rational b = cauchy_root_bound(p);
    struct Item {
        Rational lo, hi;
        int count;
    };
    std::vector<Item> work;
    int total = sturm_count(chain, -b, b);
    if (total > 0) work.push_back({-b, b, total});
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        if (it.count == 1) {
            out.push_back({it.lo, it.hi});
            continue;
        }
        Rational mid = (it.lo + it.hi) / 2;
        int left = sturm_count(chain, it.lo, mid);
        int right = it.count - left;
        if (right > 0) work.push_back({mid, it.hi, right});
        if (left > 0) work.push_back({it.lo, mid, left});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

// Bisects an isolating interval of the squarefree part until hi - lo <= width.
inline std::pair<Rational, Rational> refine_root(const QPoly& p, std::pair<Rational, Rational> iv,
                                                 const Rational& width) {
    QPoly sf = squarefree_part(p);
    int slo = qsign(sf.eval(iv.first));
    while (iv.second - iv.first > width) {
        Rational mid = (iv.first + iv.second) / 2;
        int sm = qsign(sf.eval(mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo) {
            iv.first = mid;
        } else {
            iv.second = mid;
        }
    }
    return iv;
}

}  // namespace planarlab
