#pragma once

// Rational functions num/den over SparsePoly. Arithmetic never cancels a
// common factor: equality is decided by cross-multiplication, which keeps
// every operation exact without a multivariate gcd.

#include "planarlab/algebra/poly.hpp"

#include <stdexcept>

namespace planarlab {

template <class C>
class RationalFn {
  public:
    RationalFn() = default;
    explicit RationalFn(SparsePoly<C> num)
        : num_(num), den_(SparsePoly<C>::constant(num.vars(), C(1))) {}
    RationalFn(SparsePoly<C> num, SparsePoly<C> den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.vars() != den_.vars()) throw std::invalid_argument("RationalFn: variable lists differ");
        if (den_.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
    }

    const SparsePoly<C>& num() const { return num_; }
    const SparsePoly<C>& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFn operator-(const RationalFn& a) { return {-a.num_, a.den_}; }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.num_.is_zero()) throw std::domain_error("RationalFn: division by zero function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend RationalFn operator*(const C& c, const RationalFn& a) { return {c * a.num_, a.den_}; }

    // Equality as functions: num_a * den_b == num_b * den_a.
    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    RationalFn derivative(std::size_t var) const {
        return {num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_};
    }

    template <class V, class Conv>
    V eval(const std::vector<V>& point, Conv conv) const {
        return num_.eval(point, conv) / den_.eval(point, conv);
    }

  private:
    SparsePoly<C> num_;
    SparsePoly<C> den_;
};

using RatFn = RationalFn<Rational>;

inline RatFn as_ratfn(const RatPoly& p) { return RatFn(p); }

inline double eval_double(const RatFn& f, const std::vector<double>& pt) {
    return eval_double(f.num(), pt) / eval_double(f.den(), pt);
}

}  // namespace planarlab
