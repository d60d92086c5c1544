#pragma once

// First-order averaging machinery for perturbations of the Hamiltonian
//   H = x^(2l)/(2l) + y^(2k)/(2k),  k > l >= 1:
// moment integrals I_{r,s} over the unit sublevel set, assembly of the
// induced polynomial whose positive roots predict limit-cycle energy
// levels, the perturbed field builder, and an independent line-integral
// evaluation along unperturbed orbits used to cross-check the formula.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "planarlab/algebra/json.hpp"
#include "planarlab/algebra/univariate.hpp"
#include "planarlab/cycles/section.hpp"
#include "planarlab/flow/field.hpp"

namespace planarlab {

namespace detail {

struct IrsCache {
    std::map<std::string, double> values;
    std::string path;  // empty: in-memory only
    bool loaded = false;
    std::mutex mu;

    static IrsCache& instance() {
        static IrsCache c;
        return c;
    }

    void load_locked() {
        if (loaded) return;
        loaded = true;
        const char* dir = std::getenv("PLANARLAB_CACHE");
        if (!dir || !*dir) return;
        path = std::string(dir) + "/irs-cache.json";
        std::ifstream in(path);
        if (!in) return;
        try {
            Json j = Json::parse(in);
            for (auto& [key, v] : j.items()) values[key] = v.get<double>();
        } catch (...) {
            // unreadable cache is regenerated, never trusted
            values.clear();
        }
    }

    void save_locked() const {
        if (path.empty()) return;
        Json j = Json::object();
        for (auto& [key, v] : values) j[key] = v;
        const std::string tmp = path + ".tmp";
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump();
        out.close();
        std::rename(tmp.c_str(), path.c_str());
    }
};

}  // namespace detail

// Moment integral of x^(2r) y^(2s) over {x^(2l)/(2l) + y^(2k)/(2k) <= 1}:
// closed-form power integral in y, adaptive (tanh-sinh) quadrature in x.
// Results are memoized, optionally on disk under $PLANARLAB_CACHE.
inline double i_rs(int k, int l, int r, int s, double tol = 1e-12) {
    if (k < 1 || l < 1) throw std::invalid_argument("i_rs: k, l >= 1");
    if (r < 0 || s < 0) throw std::invalid_argument("i_rs: r, s >= 0");
    if (tol <= 0 || tol > 1e-2) throw std::invalid_argument("i_rs: tol in (0, 1e-2]");

    std::ostringstream key;
    key << "k" << k << "_l" << l << "_r" << r << "_s" << s << "_tol" << tol;
    auto& cache = detail::IrsCache::instance();
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        cache.load_locked();
        auto it = cache.values.find(key.str());
        if (it != cache.values.end()) return it->second;
    }

    const double X = std::pow(2.0 * l, 1.0 / (2.0 * l));
    const double ypow = (2.0 * s + 1) / (2.0 * k);
    auto f = [&](double x) {
        const double core = 1.0 - std::pow(x, 2.0 * l) / (2.0 * l);
        if (core <= 0) return 0.0;
        return std::pow(x, 2.0 * r) * std::pow(2.0 * k * core, ypow);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double inner = integrator.integrate(f, 0.0, X, tol);
    const double value = 4.0 / (2.0 * s + 1) * inner;

    {
        std::lock_guard<std::mutex> lock(cache.mu);
        cache.values[key.str()] = value;
        cache.save_locked();
    }
    return value;
}

// Perturbation data: the unperturbed field is (y^(2k-1), -x^(2l-1)); the
// perturbation adds eps * (R, S) with
//   R = sum_{j=1}^{2k-1} (a_j / j) y^(2k-1-j) x^j,
//   S = sum_{j=1}^{2l-1} (b_j / j) x^(2l-1-j) y^j.
// Derived exponents n = 2k-1, m = 2l-1; energy parametrization h = w^(2kl).
struct MelnikovSpec {
    int k = 2, l = 1;
    std::vector<double> a;  // size 2k-1
    std::vector<double> b;  // size 2l-1

    MelnikovSpec(int k_, int l_, std::vector<double> a_, std::vector<double> b_)
        : k(k_), l(l_), a(std::move(a_)), b(std::move(b_)) {
        if (!(k > l && l >= 1)) throw std::invalid_argument("MelnikovSpec: need k > l >= 1");
        if (a.size() != static_cast<std::size_t>(2 * k - 1)) {
            throw std::invalid_argument("MelnikovSpec: a must have 2k-1 entries");
        }
        if (b.size() != static_cast<std::size_t>(2 * l - 1)) {
            throw std::invalid_argument("MelnikovSpec: b must have 2l-1 entries");
        }
    }

    int n() const { return 2 * k - 1; }
    int m() const { return 2 * l - 1; }
    double h_of_w(double w) const { return std::pow(w, 2.0 * k * l); }
    double w_of_h(double h) const { return std::pow(h, 1.0 / (2.0 * k * l)); }
};

// The averaged displacement over the oval at energy h factors as a power of
// w times a polynomial in t = w^(2(k-l)); its coefficients c_0..c_{k+l-1}
// carry the perturbation through the moment integrals.
struct MelnikovPoly {
    int k = 2, l = 1;
    std::vector<double> c;  // c_j, j = 0..k+l-1, polynomial in t = w^(2(k-l))

    // M(h) via the factored form.
    double eval(double h) const {
        const double w = std::pow(h, 1.0 / (2.0 * k * l));
        const double t = std::pow(w, 2.0 * (k - l));
        double poly = 0;
        for (std::size_t j = c.size(); j-- > 0;) poly = poly * t + c[j];
        // prefactor w^(2kl) * w^((k-l)(1-2l)) = w^(2kl + (k-l)(1-2l))
        return std::pow(w, 2.0 * k * l + (k - l) * (1.0 - 2.0 * l)) * poly;
    }

    // Energy levels h where M vanishes with t = w^(2(k-l)) > 0 a simple root.
    std::vector<double> predicted_levels() const {
        // Exact root isolation on the rational image of the coefficients.
        QPoly p;
        p.c.assign(c.size(), Rational(0));
        for (std::size_t j = 0; j < c.size(); ++j) p.c[j] = Rational(c[j]);
        while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
        std::vector<double> levels;
        if (p.c.size() < 2) return levels;
        for (auto& iv : isolate_real_roots(p)) {
            auto tight = refine_root(p, iv, Rational(1, Int(1) << 60));
            const double t = (to_double(tight.first) + to_double(tight.second)) / 2;
            if (t <= 0) continue;
            // h = w^(2kl), t = w^(2(k-l))  =>  h = t^(kl/(k-l))
            levels.push_back(std::pow(t, static_cast<double>(k) * l / (k - l)));
        }
        return levels;
    }
};

inline MelnikovPoly melnikov_poly(const MelnikovSpec& spec, double tol = 1e-12) {
    MelnikovPoly mp;
    mp.k = spec.k;
    mp.l = spec.l;
    mp.c.assign(static_cast<std::size_t>(spec.k + spec.l), 0.0);
    for (int i = 0; i < spec.k; ++i) {
        const double ai = spec.a[static_cast<std::size_t>(2 * i)];  // a_{2i+1}
        if (ai != 0) mp.c[static_cast<std::size_t>(spec.l + i)] += ai * i_rs(spec.k, spec.l, i, spec.k - 1 - i, tol);
    }
    for (int i = 0; i < spec.l; ++i) {
        const double bi = spec.b[static_cast<std::size_t>(2 * i)];  // b_{2i+1}
        if (bi != 0) mp.c[static_cast<std::size_t>(spec.l - 1 - i)] += bi * i_rs(spec.k, spec.l, spec.l - 1 - i, i, tol);
    }
    return mp;
}

// The perturbed polynomial field (exact rational coefficients from the
// double inputs, so the algebra layer sees a well-defined system).
inline VectorField2 build_melnikov_field(const MelnikovSpec& spec, double eps) {
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    RatPoly P = y.pow(static_cast<std::uint32_t>(2 * spec.k - 1));
    RatPoly Q = Rational(-1) * x.pow(static_cast<std::uint32_t>(2 * spec.l - 1));
    const Rational re(eps);
    for (int j = 1; j <= 2 * spec.k - 1; ++j) {
        const double aj = spec.a[static_cast<std::size_t>(j - 1)];
        if (aj == 0) continue;
        P = P + (re * Rational(aj) / Rational(j)) *
                    (y.pow(static_cast<std::uint32_t>(2 * spec.k - 1 - j)) * x.pow(static_cast<std::uint32_t>(j)));
    }
    for (int j = 1; j <= 2 * spec.l - 1; ++j) {
        const double bj = spec.b[static_cast<std::size_t>(j - 1)];
        if (bj == 0) continue;
        Q = Q + (re * Rational(bj) / Rational(j)) *
                    (x.pow(static_cast<std::uint32_t>(2 * spec.l - 1 - j)) * y.pow(static_cast<std::uint32_t>(j)));
    }
    return VectorField2(P, Q);
}

// Independent cross-check: the line integral of (S dx - R dy) along the
// closed unperturbed orbit at energy h, taken in the direction of the flow
// and accumulated as an augmented state. Agrees with MelnikovPoly::eval up
// to quadrature and integration error.
inline double melnikov_line_integral(const MelnikovSpec& spec, double h, double tol = 1e-12) {
    if (h <= 0) throw std::invalid_argument("melnikov_line_integral: h > 0 required");
    const int k = spec.k, l = spec.l;
    const double x0 = std::pow(2.0 * l * h, 1.0 / (2.0 * l));

    auto R = [&](double x, double y) {
        double acc = 0;
        for (int j = 1; j <= 2 * k - 1; ++j) {
            const double aj = spec.a[static_cast<std::size_t>(j - 1)];
            if (aj != 0) acc += aj / j * std::pow(y, 2 * k - 1 - j) * std::pow(x, j);
        }
        return acc;
    };
    auto S = [&](double x, double y) {
        double acc = 0;
        for (int j = 1; j <= 2 * l - 1; ++j) {
            const double bj = spec.b[static_cast<std::size_t>(j - 1)];
            if (bj != 0) acc += bj / j * std::pow(x, 2 * l - 1 - j) * std::pow(y, j);
        }
        return acc;
    };

    OdeSystem sys;
    sys.dim = 3;
    sys.rhs = [&](double, const StateVec& st, StateVec& ds) {
        const double xdot = std::pow(st[1], 2 * k - 1);
        const double ydot = -std::pow(st[0], 2 * l - 1);
        ds[0] = xdot;
        ds[1] = ydot;
        ds[2] = S(st[0], st[1]) * xdot - R(st[0], st[1]) * ydot;
    };

    IntegrateOptions io;
    io.tol = tol;
    io.store_dense = false;
    EventSpec ev;
    ev.g = [](double, const StateVec& s) { return s[1]; };
    ev.direction = -1;  // the flow crosses the positive x-axis downward
    ev.terminal = true;
    ev.accept = [](const StateVec& s) { return s[0] > 0; };
    io.events.push_back(ev);

    Trajectory tr = integrate(sys, StateVec{x0, 0.0, 0.0}, 0.0, 1e5, io);
    if (tr.outcome != FlowOutcome::EventStop) {
        throw std::runtime_error("melnikov_line_integral: orbit did not close");
    }
    return tr.x_final[2];
}

}  // namespace planarlab
