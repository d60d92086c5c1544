#pragma once

// Rigid systems x' = -y + x F(x,y), y' = x + y F(x,y): reduction to a
// periodic scalar equation on the angle (the radial equation r' = sum_j
// F_j(cos th, sin th) r^(j+1) over the homogeneous parts F_j), and the
// leading return-map coefficients for quadratic F.

#include "planarlab/cycles/families.hpp"
#include "planarlab/scalar/equation.hpp"

#include <cmath>
#include <numbers>

namespace planarlab {

struct RigidParams {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    // Discriminant of the quadratic part; <= 0 makes the cubic coefficient
    // of the radial equation sign-definite.
    double delta() const { return e * e - 4 * d * f; }
};

// F = a + bx + cy + dx^2 + exy + fy^2 with exact dyadic images of the inputs.
inline RatPoly rigid_quadratic(const RigidParams& p) {
    const std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    RatPoly F = RatPoly::constant(vars, Rational(p.a));
    F = F + Rational(p.b) * x + Rational(p.c) * y;
    F = F + Rational(p.d) * x * x + Rational(p.e) * x * y + Rational(p.f) * y * y;
    return F;
}

inline VectorField2 rigid_system(const RigidParams& p) { return rigid_field(rigid_quadratic(p)); }

// Radial equation of the rigid system on tau = theta, period 2*pi. The
// homogeneous part of F of degree j contributes F_j(cos, sin) r^(j+1),
// expanded exactly into harmonics.
inline PeriodicScalarEq rigid_to_scalar(const RatPoly& F) {
    if (F.vars().size() != 2) throw std::invalid_argument("rigid_to_scalar: F must be bivariate");
    const TrigPoly ct = TrigPoly::cos_harmonic(1);
    const TrigPoly st = TrigPoly::sin_harmonic(1);

    std::map<int, TrigPoly> by_degree;
    for (auto& [e, coef] : F.terms()) {
        const int pdeg = static_cast<int>(e[0]);
        const int qdeg = static_cast<int>(e[1]);
        by_degree[pdeg + qdeg] =
            by_degree[pdeg + qdeg] +
            coef * (ct.pow(static_cast<unsigned>(pdeg)) * st.pow(static_cast<unsigned>(qdeg)));
    }

    std::vector<ScalarTerm> terms;
    for (auto& [j, tp] : by_degree) {
        if (!tp.is_zero()) terms.push_back({j + 1, tp});
    }
    return make_scalar_eq(std::move(terms), 2 * std::numbers::pi, "2*pi");
}

struct RigidLyapunov {
    double V1 = 0, V3 = 0, V5 = 0;
};

// Leading coefficients of the displacement map at the origin for quadratic
// F; the origin is a center exactly when all three vanish.
inline RigidLyapunov rigid_lyapunov(const RigidParams& p) {
    RigidLyapunov v;
    v.V1 = std::expm1(2 * std::numbers::pi * p.a);
    v.V3 = std::numbers::pi * (p.d + p.f);
    v.V5 = std::numbers::pi * ((p.c * p.c - p.b * p.b) * p.d - p.b * p.c * p.e) / 2;
    return v;
}

}  // namespace planarlab
