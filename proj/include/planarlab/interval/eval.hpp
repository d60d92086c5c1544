#pragma once

// Interval enclosure of polynomial / rational-function values over a box.
// Containment is guaranteed; tightness comes from Horner-per-variable
// evaluation with sharp integer powers, plus bisection at the call sites.

#include "planarlab/algebra/rational_fn.hpp"
#include "planarlab/interval/box.hpp"

namespace planarlab {

inline Interval eval_box(const RatPoly& p, const Box& b) {
    return p.eval<Interval>(b.dims, [](const Rational& c) { return interval_from_rational(c); });
}

// Throws std::domain_error if the denominator enclosure straddles zero.
inline Interval eval_box(const RatFn& f, const Box& b) {
    return eval_box(f.num(), b) / eval_box(f.den(), b);
}

}  // namespace planarlab
