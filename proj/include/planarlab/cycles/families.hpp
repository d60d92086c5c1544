#pragma once

// Named center/cycle families used across the cycle, period, and scalar
// modules: the reversible quadratic family with two parameters, the
// rotation-equivariant complex family and its reduction, odd homogeneous
// centers, rigid systems, and the radial logistic testbed.

#include <stdexcept>
#include <vector>

#include "planarlab/flow/field.hpp"

namespace planarlab {

struct LoudParams {
    double D = 0, F = 0;
};

// x' = -y + xy, y' = x + D x^2 + F y^2.
inline VectorField2 loud_field(const LoudParams& p) {
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    RatPoly P = Rational(-1) * y + x * y;
    RatPoly Q = x + Rational(p.D) * (x * x) + Rational(p.F) * (y * y);
    return VectorField2(P, Q);
}

// Parameters of the reduced reversible quadratic system whose period
// function matches the rotation-equivariant family z' = iz + (z zbar)^n
// z^(k+1): D = -k / (2(k+n)), F = 1 + D.
inline LoudParams equivariant_to_loud(int n, int k) {
    if (n < 0 || k < 1) throw std::invalid_argument("equivariant_to_loud: need n >= 0, k >= 1");
    LoudParams p;
    p.D = -static_cast<double>(k) / (2.0 * (k + n));
    p.F = 1 + p.D;
    return p;
}

// Real form of z' = iz + (z zbar)^n z^(k+1):
//   x' = -y + (x^2+y^2)^n Re((x+iy)^(k+1)),
//   y' =  x + (x^2+y^2)^n Im((x+iy)^(k+1)).
inline VectorField2 equivariant_field(int n, int k) {
    if (n < 0 || k < 1) throw std::invalid_argument("equivariant_field: need n >= 0, k >= 1");
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    // (x + iy)^(k+1) by iterated complex multiply over (re, im) pairs.
    RatPoly re = RatPoly::constant(vars, Rational(1));
    RatPoly im = RatPoly::constant(vars, Rational(0));
    for (int i = 0; i < k + 1; ++i) {
        RatPoly nre = re * x - im * y;
        RatPoly nim = re * y + im * x;
        re = nre;
        im = nim;
    }
    RatPoly r2n = (x * x + y * y).pow(static_cast<std::uint32_t>(n));
    return VectorField2(Rational(-1) * y + r2n * re, x + r2n * im);
}

// Odd homogeneous center x' = -y^(2k+1), y' = x^(2k+1); its period scales
// as s^(-2k) along the section ray through (s, 0).
inline VectorField2 homogeneous_odd_field(int k) {
    if (k < 0) throw std::invalid_argument("homogeneous_odd_field: k >= 0");
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    return VectorField2(Rational(-1) * y.pow(static_cast<std::uint32_t>(2 * k + 1)),
                        x.pow(static_cast<std::uint32_t>(2 * k + 1)));
}

// Rigid system x' = -y + x F, y' = x + y F (angular speed identically 1)
// for a polynomial reactivity F.
inline VectorField2 rigid_field(const RatPoly& F) {
    if (F.vars().size() != 2) throw std::invalid_argument("rigid_field: F must be bivariate");
    const std::vector<std::string>& vars = F.vars();
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    return VectorField2(Rational(-1) * y + x * F, x + y * F);
}

// Planar lift of r' = r(1 - r^2), theta' = 1: a hyperbolic attracting
// cycle on the unit circle.
inline VectorField2 radial_logistic_field() {
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    RatPoly one_minus_r2 = RatPoly::constant(vars, Rational(1)) - x * x - y * y;
    return VectorField2(x * one_minus_r2 - y, y * one_minus_r2 + x);
}

}  // namespace planarlab
