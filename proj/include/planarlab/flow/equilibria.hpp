#pragma once

// Equilibrium finding and linear classification for polynomial planar
// fields: Newton iterations seeded from a grid, duplicates merged, types
// read off the Jacobian spectrum. In a Hamiltonian field a linear center is
// a true center, so the candidate tag is dropped there.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "planarlab/algebra/calculus.hpp"
#include "planarlab/flow/field.hpp"
#include "planarlab/interval/box.hpp"

namespace planarlab {

enum class EquilibriumType { Center, CenterCandidate, Saddle, Node, Focus, Degenerate };

inline const char* to_string(EquilibriumType t) {
    switch (t) {
        case EquilibriumType::Center: return "center";
        case EquilibriumType::CenterCandidate: return "center-candidate";
        case EquilibriumType::Saddle: return "saddle";
        case EquilibriumType::Node: return "node";
        case EquilibriumType::Focus: return "focus";
        case EquilibriumType::Degenerate: return "degenerate";
    }
    return "?";
}

struct Equilibrium {
    double x = 0, y = 0;
    EquilibriumType type = EquilibriumType::Degenerate;
    double trace = 0, det = 0;
};

// Newton-polished zeros of (P, Q) seeded from a grid x grid lattice over the
// search box; points within 1e-8 merge. Polynomial components required.
inline std::vector<Equilibrium> classify_equilibria(const VectorField2& vf, const Box& search,
                                                    int grid = 20) {
    if (!vf.is_polynomial()) throw std::invalid_argument("classify_equilibria: polynomial components required");
    if (search.dims.size() != 2) throw std::invalid_argument("classify_equilibria: planar box required");
    if (grid < 1) throw std::invalid_argument("classify_equilibria: grid >= 1");

    const auto jac = poly_jacobian(vf.P.poly(), vf.Q.poly());
    const CompiledPoly jc[4] = {CompiledPoly(jac[0]), CompiledPoly(jac[1]), CompiledPoly(jac[2]),
                                CompiledPoly(jac[3])};
    const bool hamiltonian = vf.is_hamiltonian();

    const Interval& bx = search.dims[0];
    const Interval& by = search.dims[1];
    const double wx = bx.hi - bx.lo, wy = by.hi - by.lo;

    // Scale for the residual acceptance threshold.
    double fscale = 0;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            const double x = bx.lo + wx * i / grid, y = by.lo + wy * j / grid;
            fscale = std::max({fscale, std::fabs(vf.P(x, y)), std::fabs(vf.Q(x, y))});
        }
    }
    fscale = std::max(fscale, 1.0);

    std::vector<Equilibrium> found;
    const double pad = 1e-9;  // accept roots on the box boundary
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double x = bx.lo + wx * (i + 0.5) / grid;
            double y = by.lo + wy * (j + 0.5) / grid;
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                const double fx = vf.P(x, y), fy = vf.Q(x, y);
                if (!std::isfinite(fx) || !std::isfinite(fy)) break;
                if (std::fabs(fx) < 1e-13 * fscale && std::fabs(fy) < 1e-13 * fscale) {
                    converged = true;
                    break;
                }
                const double p[2] = {x, y};
                const double a = jc[0](p), b = jc[1](p), c = jc[2](p), d = jc[3](p);
                const double det = a * d - b * c;
                if (std::fabs(det) < 1e-300) break;
                const double dx = (d * fx - b * fy) / det;
                const double dy = (a * fy - c * fx) / det;
                x -= dx;
                y -= dy;
                if (std::fabs(x) + std::fabs(y) > 1e8) break;
            }
            if (!converged) continue;
            if (x < bx.lo - pad || x > bx.hi + pad || y < by.lo - pad || y > by.hi + pad) continue;

            bool duplicate = false;
            for (auto& e : found) {
                if (std::fabs(e.x - x) < 1e-8 && std::fabs(e.y - y) < 1e-8) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;

            const double p[2] = {x, y};
            const double a = jc[0](p), b = jc[1](p), c = jc[2](p), d = jc[3](p);
            Equilibrium eq;
            eq.x = x;
            eq.y = y;
            eq.trace = a + d;
            eq.det = a * d - b * c;
            const double jscale = std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d), 1.0});
            if (std::fabs(eq.det) < 1e-10 * jscale * jscale) {
                eq.type = EquilibriumType::Degenerate;
            } else if (eq.det < 0) {
                eq.type = EquilibriumType::Saddle;
            } else {
                const double disc = eq.trace * eq.trace - 4 * eq.det;
                if (std::fabs(eq.trace) < 1e-10 * jscale) {
                    eq.type = hamiltonian ? EquilibriumType::Center : EquilibriumType::CenterCandidate;
                } else if (disc < 0) {
                    eq.type = EquilibriumType::Focus;
                } else {
                    eq.type = EquilibriumType::Node;
                }
            }
            found.push_back(eq);
        }
    }
    return found;
}

}  // namespace planarlab
