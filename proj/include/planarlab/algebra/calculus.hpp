#pragma once

// Exact differential calculus on planar fields with polynomial or rational
// components: divergence, Jacobian, and the Hamiltonian test.

#include "planarlab/algebra/rational_fn.hpp"

#include <array>

namespace planarlab {

inline RatPoly poly_divergence(const RatPoly& p, const RatPoly& q) {
    return p.derivative(0) + q.derivative(1);
}

inline RatFn ratfn_divergence(const RatFn& p, const RatFn& q) {
    return p.derivative(0) + q.derivative(1);
}

// Row-major [P_x, P_y, Q_x, Q_y].
inline std::array<RatPoly, 4> poly_jacobian(const RatPoly& p, const RatPoly& q) {
    return {p.derivative(0), p.derivative(1), q.derivative(0), q.derivative(1)};
}

inline std::array<RatFn, 4> ratfn_jacobian(const RatFn& p, const RatFn& q) {
    return {p.derivative(0), p.derivative(1), q.derivative(0), q.derivative(1)};
}

inline bool is_hamiltonian(const RatPoly& p, const RatPoly& q) {
    return poly_divergence(p, q).is_zero();
}

}  // namespace planarlab
