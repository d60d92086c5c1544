#pragma once

// Certification of algebraic crossing cycles: a closed curve made of an arc
// of {C_up = 0} above the separation graph and an arc of {C_low = 0} below
// it, glued at two curve points. The full check also proves invariance of
// each algebraic curve under its zone field by exact polynomial division.

#include "planarlab/algebra/poly.hpp"
#include "planarlab/pwl/integrate.hpp"
#include "planarlab/pwl/system.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace planarlab {

struct AlgebraicCycleReport {
    bool points_on_separation = false;
    bool points_on_upper = false;
    bool points_on_lower = false;
    bool transversal = false;                 // curve/graph contact is simple at both points
    std::optional<bool> upper_invariant;      // unset without a field to check against
    std::optional<bool> lower_invariant;
    std::optional<bool> fields_cross;         // unset without a field to check against
    std::vector<std::string> failures;
    bool all_passed = false;
};

namespace pwl_detail {

inline double poly_at(const RatPoly& p, double x, double y) {
    return eval_double(p, std::vector<double>{x, y});
}

struct AlgebraicCycleInput {
    const RatPoly* upper_curve;
    const RatPoly* lower_curve;
    std::function<double(double)> sep_at;
    std::function<double(double)> sep_slope;
    const PwlSystem* sys;  // null in the geometry-only check
};

inline AlgebraicCycleReport verify_algebraic_cycle_impl(const AlgebraicCycleInput& in,
                                                        std::pair<double, double> p1,
                                                        std::pair<double, double> p2, double tol) {
    for (const RatPoly* c : {in.upper_curve, in.lower_curve})
        if (c->vars().size() != 2)
            throw std::invalid_argument("verify_algebraic_cycle: curves must be bivariate");

    AlgebraicCycleReport rep;
    const std::pair<double, double> pts[2] = {p1, p2};

    rep.points_on_separation = true;
    for (const auto& [x, y] : pts)
        if (std::abs(y - in.sep_at(x)) > tol) {
            rep.points_on_separation = false;
            rep.failures.push_back("point off the separation curve");
        }

    auto on_curve = [&](const RatPoly& c, const char* label) {
        bool ok = true;
        for (const auto& [x, y] : pts)
            if (std::abs(poly_at(c, x, y)) > tol) {
                ok = false;
                rep.failures.push_back(std::string(label) + " curve misses a gluing point");
            }
        return ok;
    };
    rep.points_on_upper = on_curve(*in.upper_curve, "upper");
    rep.points_on_lower = on_curve(*in.lower_curve, "lower");

    // Simple contact: the curve tangent and the graph tangent differ, i.e.
    // C_x + c'(x) C_y != 0 at the gluing point.
    rep.transversal = true;
    for (const RatPoly* c : {in.upper_curve, in.lower_curve}) {
        RatPoly cx = c->derivative(0), cy = c->derivative(1);
        for (const auto& [x, y] : pts) {
            double det = poly_at(cx, x, y) + in.sep_slope(x) * poly_at(cy, x, y);
            if (std::abs(det) <= 1e-10) {
                rep.transversal = false;
                rep.failures.push_back("curve tangent to the separation at a gluing point");
            }
        }
    }

    if (in.sys) {
        auto invariant = [&](const RatPoly& c, const RatPoly& p, const RatPoly& q,
                             const char* label) {
            RatPoly lie = c.derivative(0) * p + c.derivative(1) * q;
            RatPoly cof(c.vars());
            bool ok = try_divide_exact(lie, c, cof);
            if (!ok) rep.failures.push_back(std::string(label) + " curve is not field-invariant");
            return ok;
        };
        rep.upper_invariant = invariant(*in.upper_curve, in.sys->upper_p, in.sys->upper_q, "upper");
        rep.lower_invariant = invariant(*in.lower_curve, in.sys->lower_p, in.sys->lower_q, "lower");

        bool crossing = true;
        for (const auto& [x, y] : pts) {
            double gu = gdot(*in.sys, true, x, y);
            double gl = gdot(*in.sys, false, x, y);
            if (std::abs(gu) <= 1e-10 || std::abs(gl) <= 1e-10 || gu * gl < 0) {
                crossing = false;
                rep.failures.push_back("fields do not cross the separation at a gluing point");
            }
        }
        rep.fields_cross = crossing;
    }

    rep.all_passed = rep.points_on_separation && rep.points_on_upper && rep.points_on_lower &&
                     rep.transversal && rep.upper_invariant.value_or(true) &&
                     rep.lower_invariant.value_or(true) && rep.fields_cross.value_or(true);
    return rep;
}

}  // namespace pwl_detail

// Geometry-only check: no vector field available, so invariance and the
// crossing condition are reported as not evaluated.
inline AlgebraicCycleReport verify_algebraic_cycle(const RatPoly& upper_curve,
                                                   const RatPoly& lower_curve,
                                                   const RatPoly& separation,
                                                   std::pair<double, double> p1,
                                                   std::pair<double, double> p2,
                                                   double tol = 1e-9) {
    std::function<double(double)> sep_at, sep_slope;
    if (separation.vars().size() == 1) {
        RatPoly slope = separation.derivative(0);
        sep_at = [separation](double x) { return eval_double(separation, std::vector<double>{x}); };
        sep_slope = [slope](double x) { return eval_double(slope, std::vector<double>{x}); };
    } else if (separation.vars().size() == 2 && separation.degree_in(1) == 0) {
        RatPoly slope = separation.derivative(0);
        sep_at = [separation](double x) { return pwl_detail::poly_at(separation, x, 0); };
        sep_slope = [slope](double x) { return pwl_detail::poly_at(slope, x, 0); };
    } else {
        throw std::invalid_argument("verify_algebraic_cycle: separation must be a graph over x");
    }
    pwl_detail::AlgebraicCycleInput in{&upper_curve, &lower_curve, sep_at, sep_slope, nullptr};
    return pwl_detail::verify_algebraic_cycle_impl(in, p1, p2, tol);
}

inline AlgebraicCycleReport verify_algebraic_cycle(const PwlSystem& sys, const RatPoly& upper_curve,
                                                   const RatPoly& lower_curve,
                                                   std::pair<double, double> p1,
                                                   std::pair<double, double> p2,
                                                   double tol = 1e-9) {
    pwl_detail::AlgebraicCycleInput in{&upper_curve, &lower_curve,
                                       [&sys](double x) { return sys.sep_at(x); },
                                       [&sys](double x) { return sys.sep_slope(x); }, &sys};
    return pwl_detail::verify_algebraic_cycle_impl(in, p1, p2, tol);
}

inline Json to_json(const AlgebraicCycleReport& rep) {
    auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    return {{"points_on_separation", rep.points_on_separation},
            {"points_on_upper", rep.points_on_upper},
            {"points_on_lower", rep.points_on_lower},
            {"transversal", rep.transversal},
            {"upper_invariant", opt(rep.upper_invariant)},
            {"lower_invariant", opt(rep.lower_invariant)},
            {"fields_cross", opt(rep.fields_cross)},
            {"failures", rep.failures},
            {"all_passed", rep.all_passed}};
}

}  // namespace planarlab
