#pragma once

// Dulac-function data: exact assembly of M_s = V_x P + V_y Q + s (P_x + Q_y) V
// over rational functions, the discriminant-in-y probe that controls the
// topology of {V = 0}, and the Lienard shorthand used by the worked examples.

#include "planarlab/algebra/json.hpp"
#include "planarlab/algebra/rational_fn.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace planarlab {

// Even-monomial factor carrying the allowed vanishing set of M_s, paired with
// the cofactor whose strict sign the certifier has to establish.
struct FactorHint {
    RatPoly factor;
    RatFn cofactor;
};

struct DulacInstance {
    RatFn V;
    RatFn P, Q;
    Rational s;
    std::optional<FactorHint> hint;

    DulacInstance(RatFn v, RatFn p, RatFn q, Rational s_value,
                  std::optional<FactorHint> h = std::nullopt)
        : V(std::move(v)), P(std::move(p)), Q(std::move(q)), s(std::move(s_value)),
          hint(std::move(h)) {
        if (V.vars().size() != 2) throw std::invalid_argument("DulacInstance: expected two variables");
        if (V.vars() != P.vars() || P.vars() != Q.vars())
            throw std::invalid_argument("DulacInstance: V, P, Q must share variables");
        if (hint && hint->factor.vars() != V.vars())
            throw std::invalid_argument("DulacInstance: hint variables differ");
    }

    DulacInstance(const RatPoly& v, const RatPoly& p, const RatPoly& q, Rational s_value,
                  std::optional<FactorHint> h = std::nullopt)
        : DulacInstance(as_ratfn(v), as_ratfn(p), as_ratfn(q), std::move(s_value), std::move(h)) {}
};

inline RatFn m_s(const DulacInstance& inst) {
    RatFn div = inst.P.derivative(0) + inst.Q.derivative(1);
    return inst.V.derivative(0) * inst.P + inst.V.derivative(1) * inst.Q + inst.s * (div * inst.V);
}

// Discriminant of V in y for V = (A(x) y^2 + B(x) y + C(x)) / D(x), i.e.
// (B^2 - 4AC) / D^2. Negative values mean the vertical line at x misses
// {V = 0} entirely; this is what decides whether the complement of the level
// set can have a holed component.
inline RatFn dis_y(const RatFn& V) {
    if (V.den().degree_in(1) != 0) throw std::invalid_argument("dis_y: denominator depends on y");
    if (V.num().degree_in(1) != 2) throw std::invalid_argument("dis_y: V is not quadratic in y");
    RatPoly A = V.num().coefficient_of(1, 2);
    RatPoly B = V.num().coefficient_of(1, 1);
    RatPoly C = V.num().coefficient_of(1, 0);
    return RatFn(B * B - Rational(4) * (A * C), V.den() * V.den());
}

// x' = y - F(x), y' = -x with F given over the shared (x, y) variable list.
inline std::pair<RatFn, RatFn> lienard_field(const RatFn& F) {
    if (F.vars().size() != 2) throw std::invalid_argument("lienard_field: expected two variables");
    if (F.num().degree_in(1) != 0 || F.den().degree_in(1) != 0)
        throw std::invalid_argument("lienard_field: F must depend on the first variable only");
    RatPoly x = RatPoly::variable(F.vars(), 0);
    RatPoly y = RatPoly::variable(F.vars(), 1);
    return {as_ratfn(y) - F, as_ratfn(-x)};
}

// The quadratic-in-y candidate y^2 - F(x) y + x^2 + k from the Lienard
// examples; k shifts the level sets to make M_{-1} semidefinite.
inline RatFn lienard_dulac_v(const RatFn& F, const Rational& k) {
    RatPoly x = RatPoly::variable(F.vars(), 0);
    RatPoly y = RatPoly::variable(F.vars(), 1);
    return as_ratfn(y * y + x * x + RatPoly::constant(F.vars(), k)) - as_ratfn(y) * F;
}

namespace dulac_detail {

inline RatFn ratfn_or_poly(const Json& j) {
    if (j.contains("den")) return ratfn_from_json(j);
    return as_ratfn(ratpoly_from_json(j));
}

}  // namespace dulac_detail

inline Json to_json(const DulacInstance& inst) {
    Json j;
    j["V"] = to_json(inst.V);
    j["P"] = to_json(inst.P);
    j["Q"] = to_json(inst.Q);
    j["s"] = format_rational(inst.s);
    if (inst.hint) {
        j["hint"] = Json{{"factor", to_json(inst.hint->factor)},
                         {"cofactor", to_json(inst.hint->cofactor)}};
    }
    return j;
}

inline DulacInstance dulac_instance_from_json(const Json& j) {
    std::optional<FactorHint> hint;
    if (j.contains("hint")) {
        hint = FactorHint{ratpoly_from_json(j.at("hint").at("factor")),
                          dulac_detail::ratfn_or_poly(j.at("hint").at("cofactor"))};
    }
    return DulacInstance(dulac_detail::ratfn_or_poly(j.at("V")),
                         dulac_detail::ratfn_or_poly(j.at("P")),
                         dulac_detail::ratfn_or_poly(j.at("Q")),
                         parse_rational(j.at("s").is_string() ? j.at("s").get<std::string>()
                                                             : j.at("s").dump()),
                         std::move(hint));
}

}  // namespace planarlab
