#pragma once

// Two-zone piecewise-linear systems split by a polynomial graph y = c(x).
// The upper field acts on y >= c(x), the lower on y <= c(x). Fields are kept
// as exact affine polynomials so first-integral and invariance checks stay
// identities; the integrator compiles them to doubles.

#include "planarlab/algebra/chebyshev.hpp"
#include "planarlab/algebra/json.hpp"
#include "planarlab/algebra/rational_fn.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace planarlab {

struct PwlSystem {
    RatPoly upper_p, upper_q;  // active on y >= c(x)
    RatPoly lower_p, lower_q;  // active on y <= c(x)
    RatPoly separation;        // c(x), must not involve y
    double eps = 0;            // populated by the Chebyshev constructor
    int n = 0;

    PwlSystem(RatPoly up, RatPoly uq, RatPoly lp, RatPoly lq, RatPoly sep)
        : upper_p(std::move(up)), upper_q(std::move(uq)), lower_p(std::move(lp)),
          lower_q(std::move(lq)), separation(std::move(sep)) {
        const auto& vars = upper_p.vars();
        if (vars.size() != 2) throw std::invalid_argument("PwlSystem: expected two variables");
        for (const RatPoly* f : {&upper_q, &lower_p, &lower_q, &separation})
            if (f->vars() != vars) throw std::invalid_argument("PwlSystem: variable lists differ");
        for (const RatPoly* f : {&upper_p, &upper_q, &lower_p, &lower_q})
            if (f->total_degree() > 1)
                throw std::invalid_argument("PwlSystem: fields must be affine");
        if (separation.degree_in(1) != 0)
            throw std::invalid_argument("PwlSystem: separation must be a graph y = c(x)");
    }

    const std::vector<std::string>& vars() const { return upper_p.vars(); }

    double sep_at(double x) const { return eval_double(separation, {x, 0.0}); }
    double sep_slope(double x) const { return eval_double(separation.derivative(0), {x, 0.0}); }

    // Signed side of the separation graph: positive above, negative below.
    double side(double x, double y) const { return y - sep_at(x); }

    void upper(double x, double y, double& dx, double& dy) const {
        dx = eval_double(upper_p, {x, y});
        dy = eval_double(upper_q, {x, y});
    }
    void lower(double x, double y, double& dx, double& dy) const {
        dx = eval_double(lower_p, {x, y});
        dy = eval_double(lower_q, {x, y});
    }

    double upper_div() const {
        return eval_double(upper_p.derivative(0) + upper_q.derivative(1), {0.0, 0.0});
    }
    double lower_div() const {
        return eval_double(lower_p.derivative(0) + lower_q.derivative(1), {0.0, 0.0});
    }
};

namespace pwl_detail {

inline const std::vector<std::string>& xy_vars() {
    static const std::vector<std::string> v{"x", "y"};
    return v;
}

inline RatPoly affine(const Rational& cx, const Rational& cy, const Rational& c0) {
    RatPoly p = RatPoly::constant(xy_vars(), c0);
    p.add_term({1, 0}, cx);
    p.add_term({0, 1}, cy);
    return p;
}

}  // namespace pwl_detail

// First integrals of the two affine pieces used by the Chebyshev
// construction; both Lie derivatives vanish identically.
inline RatPoly chebyshev_h_plus() {
    RatPoly h = RatPoly::constant(pwl_detail::xy_vars(), Rational(0));
    h.add_term({0, 1}, Rational(8));
    h.add_term({2, 0}, Rational(1));
    h.add_term({1, 1}, Rational(-4));
    h.add_term({0, 2}, Rational(8));
    return h;
}

inline RatPoly chebyshev_h_minus() {
    RatPoly h = RatPoly::constant(pwl_detail::xy_vars(), Rational(0));
    h.add_term({0, 1}, Rational(-2));
    h.add_term({2, 0}, Rational(1));
    h.add_term({0, 2}, Rational(1));
    return h;
}

// Upper (x - 4y - 2, x/2 - y), lower (-y + 1, x), separated by eps * T_n(x).
inline PwlSystem chebyshev_system(int n, double eps) {
    if (n < 2) throw std::invalid_argument("chebyshev_system: n must be at least 2");
    if (eps < 0) throw std::invalid_argument("chebyshev_system: eps must be nonnegative");
    const auto& vars = pwl_detail::xy_vars();
    QPoly tn = chebyshev_t(static_cast<unsigned>(n));
    Rational e = rational_from_double(eps);
    RatPoly sep = RatPoly::constant(vars, Rational(0));
    for (std::size_t i = 0; i < tn.c.size(); ++i)
        sep.add_term({static_cast<std::uint32_t>(i), 0}, e * tn.c[i]);
    PwlSystem sys(pwl_detail::affine(1, -4, -2), pwl_detail::affine(Rational(1, 2), -1, 0),
                  pwl_detail::affine(0, -1, 1), pwl_detail::affine(1, 0, 0), sep);
    sys.eps = eps;
    sys.n = n;
    return sys;
}

namespace pwl_detail {

// Serialize an affine component pair as a 2x2 matrix plus offset.
inline Json affine_to_json(const RatPoly& p, const RatPoly& q) {
    auto coeff = [](const RatPoly& f, std::uint32_t i, std::uint32_t j) {
        return to_double(f.terms().count({i, j}) ? f.terms().at({i, j}) : Rational(0));
    };
    return Json{{"A",
                 {{coeff(p, 1, 0), coeff(p, 0, 1)}, {coeff(q, 1, 0), coeff(q, 0, 1)}}},
                {"b", {coeff(p, 0, 0), coeff(q, 0, 0)}}};
}

inline Rational rational_from_json_number(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return rational_from_double(j.get<double>());
}

inline std::pair<RatPoly, RatPoly> affine_from_json(const Json& j) {
    const Json& a = j.at("A");
    const Json& b = j.at("b");
    if (a.size() != 2 || a.at(0).size() != 2 || a.at(1).size() != 2 || b.size() != 2)
        throw std::invalid_argument("PwlSystem JSON: affine piece must be 2x2 plus offset");
    auto r = [](const Json& v) { return rational_from_json_number(v); };
    return {affine(r(a.at(0).at(0)), r(a.at(0).at(1)), r(b.at(0))),
            affine(r(a.at(1).at(0)), r(a.at(1).at(1)), r(b.at(1)))};
}

}  // namespace pwl_detail

inline Json to_json(const PwlSystem& sys) {
    Json j;
    j["upper"] = pwl_detail::affine_to_json(sys.upper_p, sys.upper_q);
    j["lower"] = pwl_detail::affine_to_json(sys.lower_p, sys.lower_q);
    j["separation"] = to_json(sys.separation);
    j["eps"] = sys.eps;
    j["n"] = sys.n;
    return j;
}

inline PwlSystem pwl_system_from_json(const Json& j) {
    auto [up, uq] = pwl_detail::affine_from_json(j.at("upper"));
    auto [lp, lq] = pwl_detail::affine_from_json(j.at("lower"));
    PwlSystem sys(up, uq, lp, lq, ratpoly_from_json(j.at("separation")));
    if (j.contains("eps")) sys.eps = j.at("eps").get<double>();
    if (j.contains("n")) sys.n = j.at("n").get<int>();
    return sys;
}

}  // namespace planarlab
