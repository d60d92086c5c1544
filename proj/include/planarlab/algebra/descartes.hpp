#pragma once

// Descartes' rule of signs: the number of positive real roots (counted with
// multiplicity) is the number of sign changes in the coefficient sequence,
// or less than it by an even number.

#include "planarlab/algebra/univariate.hpp"

namespace planarlab {

inline int descartes_bound(const QPoly& p) {
    int changes = 0, prev = 0;
    for (auto& coeff : p.c) {
        int s = qsign(coeff);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

// Bound for negative roots: apply the rule to p(-x).
inline int descartes_bound_negative(const QPoly& p) {
    QPoly q = p;
    for (std::size_t i = 1; i < q.c.size(); i += 2) q.c[i] = -q.c[i];
    return descartes_bound(q);
}

}  // namespace planarlab
