#pragma once

// Planar vector fields (P, Q) with polynomial, rational, or black-box
// components, plus the type-erased ODE right-hand side consumed by the
// integrator. Rational components declare their pole set through the
// denominator; evaluation near it is reported, never silently NaN.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "planarlab/algebra/calculus.hpp"
#include "planarlab/algebra/json.hpp"
#include "planarlab/algebra/rational_fn.hpp"
#include "planarlab/core/smallvec.hpp"

namespace planarlab {

using ScalarFn2 = std::function<double(double, double)>;

// One component of a planar field. Polynomials are compiled to a flat term
// list once; rational components keep num/den separate so the integrator can
// measure pole clearance.
class FieldComponent {
  public:
    FieldComponent() : FieldComponent(RatPoly::constant({"x", "y"}, Rational(0))) {}

    explicit FieldComponent(RatPoly p)
        : poly_(std::move(p)), num_c_(poly_), kind_(Kind::Poly) {
        if (poly_.vars().size() != 2) throw std::invalid_argument("FieldComponent: arity != 2");
    }
    explicit FieldComponent(RatFn f)
        : poly_(f.num()), den_(f.den()), num_c_(f.num()), den_c_(f.den()), kind_(Kind::Rational) {
        if (f.num().vars().size() != 2) throw std::invalid_argument("FieldComponent: arity != 2");
    }
    FieldComponent(ScalarFn2 fn, int degree_hint)
        : fn_(std::move(fn)), kind_(Kind::BlackBox), degree_hint_(degree_hint) {}

    double operator()(double x, double y) const {
        const double p[2] = {x, y};
        switch (kind_) {
            case Kind::Poly: return num_c_(p);
            case Kind::Rational: return num_c_(p) / den_c_(p);
            case Kind::BlackBox: return fn_(x, y);
        }
        return 0;
    }

    // Smallest |denominator| at the point; +inf when there is no pole set.
    double pole_clearance(double x, double y) const {
        if (kind_ != Kind::Rational) return std::numeric_limits<double>::infinity();
        const double p[2] = {x, y};
        return std::fabs(den_c_(p));
    }

    bool is_polynomial() const { return kind_ == Kind::Poly; }
    bool is_rational() const { return kind_ == Kind::Rational; }
    bool is_black_box() const { return kind_ == Kind::BlackBox; }

    // Polynomial form (numerator for rational components).
    const RatPoly& poly() const {
        if (kind_ == Kind::BlackBox) throw std::logic_error("FieldComponent: black-box has no polynomial form");
        return poly_;
    }
    const RatPoly& den() const {
        if (kind_ != Kind::Rational) throw std::logic_error("FieldComponent: no denominator");
        return den_;
    }
    RatFn as_ratfn() const {
        if (kind_ == Kind::Rational) return RatFn(poly_, den_);
        return RatFn(poly());
    }

    int degree() const {
        switch (kind_) {
            case Kind::Poly: return static_cast<int>(poly_.total_degree());
            case Kind::Rational:
                return static_cast<int>(poly_.total_degree()) + static_cast<int>(den_.total_degree());
            case Kind::BlackBox: return degree_hint_;
        }
        return 0;
    }
    std::size_t monomial_count() const {
        if (kind_ == Kind::BlackBox) return 0;
        std::size_t n = poly_.terms().size();
        if (kind_ == Kind::Rational) n += den_.terms().size();
        return n;
    }

  private:
    enum class Kind { Poly, Rational, BlackBox };

    RatPoly poly_{RatPoly::constant({"x", "y"}, Rational(0))};
    RatPoly den_{RatPoly::constant({"x", "y"}, Rational(1))};
    CompiledPoly num_c_;
    CompiledPoly den_c_;
    ScalarFn2 fn_;
    Kind kind_ = Kind::Poly;
    int degree_hint_ = -1;
};

struct VectorField2 {
    FieldComponent P;
    FieldComponent Q;
    std::string name;  // nonempty for registered builtins

    VectorField2() = default;
    VectorField2(FieldComponent p, FieldComponent q) : P(std::move(p)), Q(std::move(q)) {}
    VectorField2(RatPoly p, RatPoly q) : P(FieldComponent(std::move(p))), Q(FieldComponent(std::move(q))) {}
    VectorField2(RatFn p, RatFn q) : P(FieldComponent(std::move(p))), Q(FieldComponent(std::move(q))) {}

    void eval(double x, double y, double& dx, double& dy) const {
        dx = P(x, y);
        dy = Q(x, y);
    }
    double pole_clearance(double x, double y) const {
        return std::min(P.pole_clearance(x, y), Q.pole_clearance(x, y));
    }
    bool is_polynomial() const { return P.is_polynomial() && Q.is_polynomial(); }
    int degree() const { return std::max(P.degree(), Q.degree()); }
    std::size_t monomial_count() const { return P.monomial_count() + Q.monomial_count(); }

    // Divergence as an exact rational function (polynomial components have
    // denominator 1).
    RatFn divergence() const { return ratfn_divergence(P.as_ratfn(), Q.as_ratfn()); }
    bool is_hamiltonian() const {
        if (!is_polynomial()) return false;
        return planarlab::is_hamiltonian(P.poly(), Q.poly());
    }
};

// Type-erased autonomous or non-autonomous system, dimension 1..StateVec::kCapacity.
struct OdeSystem {
    int dim = 0;
    std::function<void(double, const StateVec&, StateVec&)> rhs;
    // Smallest |denominator| at the state; +inf when the field has no poles.
    std::function<double(const StateVec&)> pole_clearance;
};

inline OdeSystem ode_system(const VectorField2& vf) {
    OdeSystem s;
    s.dim = 2;
    s.rhs = [vf](double, const StateVec& y, StateVec& dy) { vf.eval(y[0], y[1], dy[0], dy[1]); };
    s.pole_clearance = [vf](const StateVec& y) { return vf.pole_clearance(y[0], y[1]); };
    return s;
}

// JSON field schema: {"kind": "polynomial"|"rational", "P": ..., "Q": ...}
// with P/Q in the polynomial (or {"num","den"}) encoding. Builtin references
// ({"kind":"builtin:<name>"}) are resolved by the caller's registry.
inline VectorField2 vectorfield2_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "polynomial") {
        return VectorField2(ratpoly_from_json(j.at("P")), ratpoly_from_json(j.at("Q")));
    }
    if (kind == "rational") {
        return VectorField2(ratfn_from_json(j.at("P")), ratfn_from_json(j.at("Q")));
    }
    throw std::invalid_argument("vectorfield2_from_json: unsupported kind '" + kind + "'");
}

inline Json to_json(const VectorField2& vf) {
    Json j;
    if (!vf.name.empty()) {
        j["kind"] = "builtin:" + vf.name;
        return j;
    }
    if (vf.is_polynomial()) {
        j["kind"] = "polynomial";
        j["P"] = to_json(vf.P.poly());
        j["Q"] = to_json(vf.Q.poly());
    } else {
        j["kind"] = "rational";
        j["P"] = to_json(vf.P.as_ratfn());
        j["Q"] = to_json(vf.Q.as_ratfn());
    }
    return j;
}

}  // namespace planarlab
