#pragma once

// Chebyshev polynomials of the first kind, exact coefficients.

#include "planarlab/algebra/univariate.hpp"

#include <cmath>
#include <vector>

namespace planarlab {

inline QPoly chebyshev_t(unsigned n) {
    QPoly t0(std::vector<Rational>{Rational(1)});
    if (n == 0) return t0;
    QPoly t1(std::vector<Rational>{Rational(0), Rational(1)});
    if (n == 1) return t1;
    for (unsigned k = 2; k <= n; ++k) {
        // t2 = 2 x t1 - t0
        std::vector<Rational> c(t1.c.size() + 1, Rational(0));
        for (std::size_t i = 0; i < t1.c.size(); ++i) c[i + 1] = 2 * t1.c[i];
        for (std::size_t i = 0; i < t0.c.size(); ++i) c[i] -= t0.c[i];
        t0 = std::move(t1);
        t1 = QPoly(std::move(c));
    }
    return t1;
}

// Positive zeros cos((2k+1)pi/(2n)), k = 0..floor((n-2)/2), descending.
inline std::vector<double> chebyshev_positive_zeros(unsigned n) {
    std::vector<double> zs;
    if (n < 2) return zs;
    unsigned m = (n - 2) / 2;
    for (unsigned k = 0; k <= m; ++k) zs.push_back(std::cos((2.0 * k + 1.0) * M_PI / (2.0 * n)));
    return zs;
}

}  // namespace planarlab
