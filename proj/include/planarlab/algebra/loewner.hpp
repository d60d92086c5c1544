#pragma once

// Planar fields from iterated d/dzbar derivatives of a real polynomial.
// Rewrite f(x, y) in (z, zbar) with x = (z + zbar)/2, y = (z - zbar)/(2i),
// apply d^n/dzbar^n, return to (x, y), and take (2^n Re, 2^n Im) as the
// field components. For n = 1 this is the gradient of f; for n = 2 it is
// (f_xx - f_yy, 2 f_xy).

#include "planarlab/algebra/poly.hpp"

namespace planarlab {

struct LoewnerField {
    RatPoly p;  // first component
    RatPoly q;  // second component
    unsigned order = 0;
    // Set when n >= deg f: the field is constant (possibly identically zero),
    // so the origin is not an isolated zero.
    bool degenerate = false;
};

namespace detail {

// Expands f((z + zbar)/2, (z - zbar)/(2i)) over vars ("z", "zbar").
inline GaussPoly to_z_zbar(const RatPoly& f) {
    std::vector<std::string> zv{"z", "zbar"};
    GaussianRational half(Rational(1, 2));
    GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
    GaussianRational plus_half_i(Rational(0), Rational(1, 2));
    GaussPoly zx(zv), zy(zv);
    zx.add_term({1, 0}, half);
    zx.add_term({0, 1}, half);
    zy.add_term({1, 0}, minus_half_i);  // 1/(2i) = -i/2
    zy.add_term({0, 1}, plus_half_i);
    GaussPoly out(zv);
    for (auto& [e, c] : f.terms()) {
        GaussPoly t = GaussPoly::constant(zv, GaussianRational(c));
        t = t * zx.pow(e[0]) * zy.pow(e[1]);
        out = out + t;
    }
    return out;
}

// Expands g(z = x + iy, zbar = x - iy) over the original variables.
inline GaussPoly to_x_y(const GaussPoly& g, const std::vector<std::string>& vars) {
    GaussianRational one(Rational(1));
    GaussianRational i(Rational(0), Rational(1));
    GaussPoly zx(vars), zb(vars);
    zx.add_term({1, 0}, one);
    zx.add_term({0, 1}, i);
    zb.add_term({1, 0}, one);
    zb.add_term({0, 1}, -i);
    GaussPoly out(vars);
    for (auto& [e, c] : g.terms()) {
        GaussPoly t = GaussPoly::constant(vars, c);
        t = t * zx.pow(e[0]) * zb.pow(e[1]);
        out = out + t;
    }
    return out;
}

}  // namespace detail

inline LoewnerField loewner_field(const RatPoly& f, unsigned n) {
    if (f.vars().size() != 2) throw std::invalid_argument("loewner_field: bivariate polynomial expected");
    GaussPoly g = detail::to_z_zbar(f);
    for (unsigned k = 0; k < n; ++k) g = g.derivative(1);
    GaussPoly back = detail::to_x_y(g, f.vars());
    Rational scale = generic_pow(Rational(2), n);
    LoewnerField out;
    out.p = scale * gauss_real_part(back);
    out.q = scale * gauss_imag_part(back);
    out.order = n;
    out.degenerate = n >= f.total_degree();
    return out;
}

}  // namespace planarlab
