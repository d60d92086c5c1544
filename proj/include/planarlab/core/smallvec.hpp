#pragma once

// Fixed-capacity state vector for ODE integration (dimensions 1..8).
// Stack storage keeps per-step allocation out of the hot loop.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace planarlab {

struct StateVec {
    static constexpr std::size_t kCapacity = 8;

    std::array<double, kCapacity> data{};
    std::size_t n = 0;

    StateVec() = default;
    explicit StateVec(std::size_t dim) : n(dim) { assert(dim <= kCapacity); }
    StateVec(std::initializer_list<double> xs) : n(xs.size()) {
        assert(n <= kCapacity);
        std::copy(xs.begin(), xs.end(), data.begin());
    }

    std::size_t size() const { return n; }
    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }

    double norm_inf() const {
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(data[i]));
        return m;
    }
    double norm2() const {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += data[i] * data[i];
        return std::sqrt(s);
    }

    friend StateVec operator+(const StateVec& a, const StateVec& b) {
        StateVec r(a.n);
        for (std::size_t i = 0; i < a.n; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend StateVec operator-(const StateVec& a, const StateVec& b) {
        StateVec r(a.n);
        for (std::size_t i = 0; i < a.n; ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend StateVec operator*(double c, const StateVec& a) {
        StateVec r(a.n);
        for (std::size_t i = 0; i < a.n; ++i) r[i] = c * a[i];
        return r;
    }

    StateVec& axpy(double c, const StateVec& x) {
        for (std::size_t i = 0; i < n; ++i) data[i] += c * x[i];
        return *this;
    }
};

}  // namespace planarlab
