#pragma once

// Closed interval arithmetic with outward rounding. Every arithmetic result
// is widened by one ulp per endpoint (the computed endpoint is within half an
// ulp of the true one, so a single nextafter step restores containment
// without touching the FPU rounding mode).

#include "planarlab/core/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace planarlab {

struct Interval {
    double lo = 0;
    double hi = 0;

    Interval() = default;
    Interval(double point) : lo(point), hi(point) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval whole() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_inside(const Interval& outer) const { return outer.lo < lo && hi < outer.hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

namespace detail {
inline double down(double x) {
    if (std::isinf(x)) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
    if (std::isinf(x)) return x;
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace detail

inline Interval outward(double lo, double hi) { return {detail::down(lo), detail::up(hi)}; }

inline Interval operator+(const Interval& a, const Interval& b) { return outward(a.lo + b.lo, a.hi + b.hi); }
inline Interval operator-(const Interval& a, const Interval& b) { return outward(a.lo - b.hi, a.hi - b.lo); }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return outward(std::min(std::min(p1, p2), std::min(p3, p4)),
                   std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("Interval division by interval containing zero");
    double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return outward(std::min(std::min(p1, p2), std::min(p3, p4)),
                   std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::domain_error("Interval intersection is empty");
    return {lo, hi};
}

inline bool try_intersect(const Interval& a, const Interval& b, Interval& out) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return false;
    out = {lo, hi};
    return true;
}

inline Interval abs_interval(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return {-a.hi, -a.lo};
    return {0, std::max(-a.lo, a.hi)};
}

namespace detail {
// Enclosure of x^n by binary exponentiation on the point interval.
inline Interval point_pow(double x, std::uint32_t n) {
    Interval acc(1.0), base(x);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}
}  // namespace detail

// Sharp integer power: even powers of sign-mixed intervals stay nonnegative.
inline Interval pow_value(const Interval& a, std::uint32_t n) {
    if (n == 0) return Interval(1.0);
    if (n == 1) return a;
    if (n % 2 == 0) {
        Interval m = abs_interval(a);
        return {std::max(0.0, detail::point_pow(m.lo, n).lo), detail::point_pow(m.hi, n).hi};
    }
    return {detail::point_pow(a.lo, n).lo, detail::point_pow(a.hi, n).hi};
}

// Tight two-ulp bracket of an exact rational.
inline Interval interval_from_rational(const Rational& q) {
    double d = to_double(q);
    if (!std::isfinite(d)) throw std::overflow_error("interval_from_rational: out of double range");
    if (Rational(d) == q) return Interval(d);
    return {detail::down(d), detail::up(d)};
}

}  // namespace planarlab
