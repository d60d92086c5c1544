#pragma once

// Sparse multivariate polynomials over an exact coefficient ring.
// Terms are kept in graded-lexicographic order (total degree first, then
// lex with vars[0] most significant); no zero coefficient is ever stored.
// That order is the canonical serialization order, so two equal polynomials
// always print identically.

#include "planarlab/core/rational.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace planarlab {

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t exp_total(const Exponents& e) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    return s;
}

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        std::uint32_t da = exp_total(a), db = exp_total(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return a.size() < b.size();
    }
};

template <class V>
V generic_pow(const V& x, std::uint32_t n) {
    if (n == 0) return V(1);
    V base = x;
    V acc(1);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

// Customization point for value powers; interval code overloads this to keep
// even powers sharp.
template <class V>
V pow_value(const V& x, std::uint32_t n) {
    return generic_pow(x, n);
}

template <class C>
class SparsePoly {
  public:
    using TermMap = std::map<Exponents, C, GrlexLess>;

    SparsePoly() = default;
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static SparsePoly constant(std::vector<std::string> vars, C value) {
        SparsePoly p(std::move(vars));
        p.add_term(Exponents(p.vars_.size(), 0), std::move(value));
        return p;
    }
    static SparsePoly variable(std::vector<std::string> vars, std::size_t index) {
        SparsePoly p(std::move(vars));
        if (index >= p.vars_.size()) throw std::out_of_range("SparsePoly::variable index");
        Exponents e(p.vars_.size(), 0);
        e[index] = 1;
        p.add_term(e, C(1));
        return p;
    }
    static SparsePoly monomial(std::vector<std::string> vars, Exponents e, C value) {
        SparsePoly p(std::move(vars));
        if (e.size() != p.vars_.size()) throw std::invalid_argument("SparsePoly::monomial arity");
        p.add_term(std::move(e), std::move(value));
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && exp_total(terms_.begin()->first) == 0);
    }
    C constant_value() const {
        Exponents z(vars_.size(), 0);
        auto it = terms_.find(z);
        return it == terms_.end() ? C(0) : it->second;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, exp_total(e));
        return d;
    }
    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    void add_term(Exponents e, C value) {
        if (coeff_is_zero(value)) return;
        if (e.size() != vars_.size()) throw std::invalid_argument("SparsePoly::add_term arity");
        auto [it, inserted] = terms_.try_emplace(std::move(e), value);
        if (!inserted) {
            it->second = it->second + value;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a) {
        SparsePoly r(a.vars_);
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r(a.vars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend SparsePoly operator*(const C& c, const SparsePoly& a) {
        SparsePoly r(a.vars_);
        for (auto& [e, ac] : a.terms_) r.add_term(e, c * ac);
        return r;
    }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    SparsePoly pow(std::uint32_t n) const {
        SparsePoly acc = constant(vars_, C(1));
        SparsePoly base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    SparsePoly derivative(std::size_t var) const {
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(std::move(d), C(static_cast<int>(e[var])) * c);
        }
        return r;
    }

    // Antiderivative in `var` with zero constant of integration. Requires C
    // to support division by integers (fields).
    SparsePoly antiderivative(std::size_t var) const {
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_) {
            Exponents d = e;
            d[var] += 1;
            r.add_term(std::move(d), c / C(static_cast<int>(d[var])));
        }
        return r;
    }

    // Substitutes an exact constant for one variable (the variable slot stays,
    // with exponent zero in every remaining term).
    SparsePoly substitute(std::size_t var, const C& value) const {
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_) {
            Exponents d = e;
            d[var] = 0;
            r.add_term(std::move(d), c * generic_pow(value, e[var]));
        }
        return r;
    }

    // Substitutes a polynomial (over the same variable list) for one variable.
    SparsePoly substitute_poly(std::size_t var, const SparsePoly& g) const {
        check_vars(*this, g);
        std::vector<SparsePoly> powers{constant(vars_, C(1))};
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_) {
            while (powers.size() <= e[var]) powers.push_back(powers.back() * g);
            Exponents d = e;
            d[var] = 0;
            r = r + (c * (monomial(vars_, std::move(d), C(1)) * powers[e[var]]));
        }
        return r;
    }

    SparsePoly homogeneous_component(std::uint32_t degree) const {
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_)
            if (exp_total(e) == degree) r.terms_.emplace(e, c);
        return r;
    }

    // Coefficient of var^k, as a polynomial in the remaining variables (the
    // extracted variable slot stays with exponent zero).
    SparsePoly coefficient_of(std::size_t var, std::uint32_t k) const {
        SparsePoly r(vars_);
        for (auto& [e, c] : terms_) {
            if (e[var] != k) continue;
            Exponents d = e;
            d[var] = 0;
            r.add_term(std::move(d), c);
        }
        return r;
    }

    template <class D, class Fn>
    SparsePoly<D> map_coefficients(Fn&& fn) const {
        SparsePoly<D> r(vars_);
        for (auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    // Exact evaluation: sum over terms with exact coefficient arithmetic.
    C eval_exact(const std::vector<C>& point) const {
        if (point.size() != vars_.size()) throw std::invalid_argument("SparsePoly::eval arity");
        C acc(0);
        for (auto& [e, c] : terms_) {
            C t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * generic_pow(point[i], e[i]);
            acc = acc + t;
        }
        return acc;
    }

    // Evaluation over an arbitrary value type V; conv maps a coefficient to V.
    // Horner per variable keeps the operation count low and (for interval V)
    // the enclosures reasonably tight.
    template <class V, class Conv>
    V eval(const std::vector<V>& point, Conv conv) const {
        if (point.size() != vars_.size()) throw std::invalid_argument("SparsePoly::eval arity");
        std::vector<const std::pair<const Exponents, C>*> items;
        items.reserve(terms_.size());
        for (auto& t : terms_) items.push_back(&t);
        return eval_rec<V>(items, 0, point, conv);
    }

  private:
    template <class D>
    friend class SparsePoly;

    static void check_vars(const SparsePoly& a, const SparsePoly& b) {
        if (a.vars_ != b.vars_) throw std::invalid_argument("SparsePoly: variable lists differ");
    }

    template <class V, class Conv>
    V eval_rec(const std::vector<const std::pair<const Exponents, C>*>& items, std::size_t var,
               const std::vector<V>& point, Conv conv) const {
        if (items.empty()) return V(0.0);
        if (var == vars_.size()) {
            C acc(0);
            for (auto* t : items) acc = acc + t->second;
            return conv(acc);
        }
        // Group by exponent of `var`, descending, and apply sparse Horner.
        std::map<std::uint32_t, std::vector<const std::pair<const Exponents, C>*>> groups;
        for (auto* t : items) groups[t->first[var]].push_back(t);
        bool first = true;
        V acc(0.0);
        std::uint32_t prev_exp = 0;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            V sub = eval_rec<V>(it->second, var + 1, point, conv);
            if (first) {
                acc = sub;
                prev_exp = it->first;
                first = false;
            } else {
                acc = acc * pow_value(point[var], prev_exp - it->first) + sub;
                prev_exp = it->first;
            }
        }
        if (prev_exp > 0) acc = acc * pow_value(point[var], prev_exp);
        return acc;
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

using RatPoly = SparsePoly<Rational>;
using GaussPoly = SparsePoly<GaussianRational>;

// Exact test for divisor | dividend by leading-term reduction in grlex
// order; on success quotient * divisor == dividend. No content scaling, so
// coefficients stay rational throughout.
inline bool try_divide_exact(const RatPoly& dividend, const RatPoly& divisor, RatPoly& quotient) {
    if (divisor.is_zero()) throw std::invalid_argument("try_divide_exact: zero divisor");
    RatPoly r = dividend;
    RatPoly q(divisor.vars());
    const auto& dlead = *divisor.terms().rbegin();
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().rbegin();
        Exponents diff(rlead.first.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (rlead.first[i] < dlead.first[i]) return false;
            diff[i] = rlead.first[i] - dlead.first[i];
        }
        RatPoly t(divisor.vars());
        t.add_term(diff, rlead.second / dlead.second);
        q = q + t;
        r = r - t * divisor;
    }
    quotient = std::move(q);
    return true;
}

inline RatPoly gauss_real_part(const GaussPoly& p) {
    return p.map_coefficients<Rational>([](const GaussianRational& c) { return c.re; });
}
inline RatPoly gauss_imag_part(const GaussPoly& p) {
    return p.map_coefficients<Rational>([](const GaussianRational& c) { return c.im; });
}
inline GaussPoly to_gauss(const RatPoly& p) {
    return p.map_coefficients<GaussianRational>([](const Rational& c) { return GaussianRational(c); });
}

// Double evaluation helpers.
inline double eval_double(const RatPoly& p, const std::vector<double>& pt) {
    return p.eval<double>(pt, [](const Rational& c) { return to_double(c); });
}

// Flat compiled form for fast repeated double evaluation (ODE right-hand
// sides). Term order is the canonical one.
struct CompiledPoly {
    struct Term {
        double c;
        std::vector<std::uint32_t> e;
    };
    std::vector<Term> terms;
    std::size_t arity = 0;

    CompiledPoly() = default;
    explicit CompiledPoly(const RatPoly& p) : arity(p.vars().size()) {
        for (auto& [e, c] : p.terms()) terms.push_back({to_double(c), e});
    }

    double operator()(const double* x) const {
        double acc = 0;
        for (auto& t : terms) {
            double v = t.c;
            for (std::size_t i = 0; i < t.e.size(); ++i) {
                double xi = x[i];
                for (std::uint32_t k = 0; k < t.e[i]; ++k) v *= xi;
            }
            acc += v;
        }
        return acc;
    }
};

}  // namespace planarlab
