#pragma once

// Named systems used across tests and the CLI, so reproductions need no
// hand-written input files.

#include <cmath>
#include <stdexcept>

#include "planarlab/algebra/poly.hpp"
#include "planarlab/flow/field.hpp"
#include "planarlab/interval/box.hpp"

namespace planarlab::builtins {

// Trinomial pair with few monomials and five positive simple solutions:
//   P = x^6 + (61/43) y^3 - y,  Q = y^6 + (61/43) x^3 - x.
inline std::vector<RatPoly> kou_system() {
    std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    Rational c(61, 43);
    RatPoly p = x.pow(6) + c * y.pow(3) - y;
    RatPoly q = y.pow(6) + c * x.pow(3) - x;
    return {p, q};
}

// The five abutting intervals covering the positive solutions of the system
// above; the box I_i x I_{6-i} isolates the root (x_i, x_{6-i}).
inline std::vector<Interval> kou_intervals() {
    return {
        Interval(0.5, 1619.0 / 2500.0),                  // I1
        Interval(1619.0 / 2500.0, 18.0 / 25.0),          // I2
        Interval(18.0 / 25.0, 75857.0 / 100000.0),       // I3
        Interval(75857.0 / 100000.0, 4.0 / 5.0),         // I4
        Interval(4.0 / 5.0, 83.0 / 100.0),               // I5
    };
}

// Reference approximations of the five positive x-solutions.
inline std::vector<double> kou_roots() {
    return {0.59679166, 0.68913517, 0.74035310, 0.77980435, 0.81602099};
}

inline VectorField2 linear_center() {
    std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    VectorField2 vf(Rational(-1) * y, x);
    vf.name = "linear-center";
    return vf;
}

// Hamiltonian lattice field (F(y), -F(x)) with F(u) = (u-1)(u-2)(u-3): nine
// equilibria on [0,4]^2 alternating center/saddle like a checkerboard.
inline VectorField2 chessboard_field() {
    std::vector<std::string> vars{"x", "y"};
    RatPoly x = RatPoly::variable(vars, 0);
    RatPoly y = RatPoly::variable(vars, 1);
    auto F = [&](const RatPoly& u) {
        RatPoly one = RatPoly::constant(vars, Rational(1));
        return (u - one) * (u - Rational(2) * one) * (u - Rational(3) * one);
    };
    VectorField2 vf(F(y), Rational(-1) * F(x));
    vf.name = "chessboard";
    return vf;
}

// Contracting system with non-symmetric Jacobian whose eigenvalues are all
// -1 along orbits: x' = -x + z1 (x + y z1)^2, y' = -y - (x + y z1)^2,
// z_i' = -z_i. State layout (x, y, z1, ..., zm).
inline OdeSystem cimen_system(int m = 1) {
    if (m < 1 || m > static_cast<int>(StateVec::kCapacity) - 2) {
        throw std::invalid_argument("cimen_system: 1 <= m <= 6");
    }
    OdeSystem sys;
    sys.dim = 2 + m;
    sys.rhs = [m](double, const StateVec& s, StateVec& ds) {
        const double w = s[0] + s[1] * s[2];
        ds[0] = -s[0] + s[2] * w * w;
        ds[1] = -s[1] - w * w;
        for (int i = 0; i < m; ++i) ds[2 + i] = -s[2 + i];
    };
    return sys;
}

// Closed-form orbit of cimen_system through (18, -12, 1, ..., 1) at t = 0.
inline StateVec cimen_solution(double t, int m = 1) {
    StateVec s(static_cast<std::size_t>(2 + m));
    s[0] = 18 * std::exp(t);
    s[1] = -12 * std::exp(2 * t);
    for (int i = 0; i < m; ++i) s[2 + i] = std::exp(-t);
    return s;
}

// Jacobian of cimen_system at a state (row-major, dim x dim).
inline std::vector<double> cimen_jacobian(const StateVec& s, int m = 1) {
    const int n = 2 + m;
    std::vector<double> J(static_cast<std::size_t>(n) * n, 0.0);
    const double w = s[0] + s[1] * s[2];
    J[0 * n + 0] = -1 + 2 * s[2] * w;
    J[0 * n + 1] = 2 * s[2] * w * s[2];
    J[0 * n + 2] = w * w + 2 * s[2] * w * s[1];
    J[1 * n + 0] = -2 * w;
    J[1 * n + 1] = -1 - 2 * w * s[2];
    J[1 * n + 2] = -2 * w * s[1];
    for (int i = 2; i < n; ++i) J[i * n + i] = -1;
    return J;
}

}  // namespace planarlab::builtins
