#pragma once

// Trigonometric polynomials in a phase variable tau with exact rational
// coefficients, stored as a two-sided complex harmonic table. Products are
// harmonic convolutions, so coefficient arithmetic never leaves the
// rationals. Sign analysis over a period reduces exactly to a univariate
// rational polynomial via the half-angle substitution u = tan(tau/2).

#include "planarlab/algebra/univariate.hpp"
#include "planarlab/core/rational.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace planarlab {

struct TrigPoly {
    // f(tau) = sum_k c[k] e^{i k tau}; real-valued tables keep
    // c[-k] = conj(c[k]). Zero coefficients are pruned.
    std::map<int, GaussianRational> c;

    static TrigPoly zero() { return {}; }
    static TrigPoly constant(const Rational& a) {
        TrigPoly f;
        f.add(0, GaussianRational(a));
        return f;
    }
    // a * cos(k tau)
    static TrigPoly cos_harmonic(int k, const Rational& a = Rational(1)) {
        if (k < 0) throw std::invalid_argument("TrigPoly: harmonic k >= 0");
        TrigPoly f;
        if (k == 0) {
            f.add(0, GaussianRational(a));
        } else {
            f.add(k, GaussianRational(a / 2));
            f.add(-k, GaussianRational(a / 2));
        }
        return f;
    }
    // b * sin(k tau)
    static TrigPoly sin_harmonic(int k, const Rational& b = Rational(1)) {
        if (k < 1) throw std::invalid_argument("TrigPoly: sin harmonic k >= 1");
        TrigPoly f;
        f.add(k, GaussianRational(Rational(0), -b / 2));
        f.add(-k, GaussianRational(Rational(0), b / 2));
        return f;
    }

    void add(int k, const GaussianRational& v) {
        auto it = c.find(k);
        if (it == c.end()) {
            if (!v.is_zero()) c.emplace(k, v);
            return;
        }
        it->second = it->second + v;
        if (it->second.is_zero()) c.erase(it);
    }

    bool is_zero() const { return c.empty(); }
    int max_harmonic() const {
        int m = 0;
        for (auto& [k, v] : c) m = std::max(m, std::abs(k));
        return m;
    }

    Rational const_coeff() const {
        auto it = c.find(0);
        return it == c.end() ? Rational(0) : it->second.re;
    }
    Rational cos_coeff(int k) const {
        if (k == 0) return const_coeff();
        auto it = c.find(k);
        return it == c.end() ? Rational(0) : 2 * it->second.re;
    }
    Rational sin_coeff(int k) const {
        auto it = c.find(k);
        return it == c.end() ? Rational(0) : -2 * it->second.im;
    }

    // Mean value over a full period.
    Rational mean() const { return const_coeff(); }

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r = a;
        for (auto& [k, v] : b.c) r.add(k, v);
        return r;
    }
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r = a;
        for (auto& [k, v] : b.c) r.add(k, -v);
        return r;
    }
    friend TrigPoly operator-(const TrigPoly& a) {
        TrigPoly r;
        for (auto& [k, v] : a.c) r.c.emplace(k, -v);
        return r;
    }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r;
        for (auto& [ka, va] : a.c)
            for (auto& [kb, vb] : b.c) r.add(ka + kb, va * vb);
        return r;
    }
    friend TrigPoly operator*(const Rational& s, const TrigPoly& a) {
        TrigPoly r;
        if (s == 0) return r;
        GaussianRational gs(s);
        for (auto& [k, v] : a.c) r.c.emplace(k, gs * v);
        return r;
    }
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.c == b.c; }

    TrigPoly pow(unsigned n) const {
        TrigPoly r = constant(Rational(1));
        for (unsigned i = 0; i < n; ++i) r = r * (*this);
        return r;
    }

    // d/dtau
    TrigPoly derivative() const {
        TrigPoly r;
        for (auto& [k, v] : c) {
            if (k != 0) r.c.emplace(k, GaussianRational(Rational(0), Rational(k)) * v);
        }
        return r;
    }

    double eval(double tau) const {
        double acc = 0;
        for (auto& [k, v] : c) {
            if (k < 0) continue;
            if (k == 0) {
                acc += to_double(v.re);
            } else {
                acc += 2 * (to_double(v.re) * std::cos(k * tau) - to_double(v.im) * std::sin(k * tau));
            }
        }
        return acc;
    }

    // p(u) with f(tau) = p(u) / (1 + u^2)^K, u = tan(tau/2), K = max harmonic.
    // Clears denominators, so sign(f) = sign(p) at every rational u.
    QPoly half_angle_polynomial() const {
        using GPoly = UniPoly<GaussianRational>;
        const int K = max_harmonic();
        GPoly up({GaussianRational(Rational(1)), GaussianRational(Rational(0), Rational(1))});   // 1 + iu
        GPoly um({GaussianRational(Rational(1)), GaussianRational(Rational(0), Rational(-1))});  // 1 - iu
        GPoly one_u2 = up * um;                                                                  // 1 + u^2

        std::vector<GPoly> pow_u2(static_cast<std::size_t>(K) + 1);
        pow_u2[0] = GPoly({GaussianRational(Rational(1))});
        for (int j = 1; j <= K; ++j) pow_u2[static_cast<std::size_t>(j)] = pow_u2[static_cast<std::size_t>(j - 1)] * one_u2;

        // e^{i tau} = (1+iu)^2 / (1+u^2), so e^{ik tau} (1+u^2)^K =
        // (1+iu)^{2k} (1+u^2)^{K-k} for k >= 0 and conjugate for k < 0.
        GPoly acc;
        for (auto& [k, v] : c) {
            const int a = std::abs(k);
            GPoly base = pow_u2[static_cast<std::size_t>(K - a)];
            const GPoly& rot = k >= 0 ? up : um;
            for (int j = 0; j < 2 * a; ++j) base = base * rot;
            acc = acc + GPoly({v}) * base;
        }

        std::vector<Rational> out(acc.c.size());
        for (std::size_t i = 0; i < acc.c.size(); ++i) {
            if (acc.c[i].im != 0) throw std::logic_error("TrigPoly: non-real harmonic table");
            out[i] = acc.c[i].re;
        }
        return QPoly(std::move(out));
    }

    // Exact value at tau = pi (the point the half-angle chart misses).
    // Imaginary parts cancel pairwise by conjugate symmetry.
    Rational value_at_pi() const {
        Rational acc = 0;
        for (auto& [k, v] : c) acc += (k % 2 == 0) ? v.re : -v.re;
        return acc;
    }

    // Whether f takes both signs over a period, decided exactly: sample the
    // cleared-denominator polynomial at rational points separated by its
    // isolated real roots.
    bool changes_sign() const {
        if (is_zero()) return false;
        QPoly p = half_angle_polynomial();
        std::vector<int> signs;
        const Rational at_pi = value_at_pi();
        if (at_pi != 0) signs.push_back(qsign(at_pi));
        if (p.is_zero()) {
            // f vanishes on the whole chart; only tau = pi can carry a sign.
            return false;
        }

        QPoly sf = squarefree_part(p);
        auto ivs = isolate_real_roots(sf);
        // Shrink isolating intervals until consecutive ones have a gap. The
        // halving keeps the root via Sturm counts, which stays well defined
        // even when an interval endpoint is itself a root.
        auto chain = sturm_chain(sf);
        auto halve = [&](std::pair<Rational, Rational>& iv) {
            Rational mid = (iv.first + iv.second) / 2;
            if (sturm_count(chain, iv.first, mid) == 1) {
                iv.second = mid;
            } else {
                iv.first = mid;
            }
        };
        for (bool again = true; again;) {
            again = false;
            for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
                if (!(ivs[i].second < ivs[i + 1].first)) {
                    halve(ivs[i]);
                    halve(ivs[i + 1]);
                    again = true;
                }
            }
        }

        std::vector<Rational> samples;
        if (ivs.empty()) {
            samples.push_back(Rational(0));
        } else {
            samples.push_back(ivs.front().first - 1);
            for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
                samples.push_back((ivs[i].second + ivs[i + 1].first) / 2);
            }
            samples.push_back(ivs.back().second + 1);
        }
        for (auto& u : samples) {
            int s = qsign(p.eval(u));
            if (s != 0) signs.push_back(s);
        }
        for (std::size_t i = 1; i < signs.size(); ++i) {
            if (signs[i] != signs[0]) return true;
        }
        return false;
    }
};

}  // namespace planarlab
