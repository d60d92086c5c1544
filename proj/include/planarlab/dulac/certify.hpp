#pragma once

// Sign certification for M_s and the resulting cycle-count verdict. Two
// rigorous routes: an exact Sturm-chain certificate when numerator and
// denominator are univariate, and a finite-box subdivision paired with a
// leading-form check on the unit circle. The leading-form route also bounds
// the radius beyond which the top-degree part dominates, so the two checks
// together cover the whole plane, not just the box.

#include "planarlab/algebra/univariate.hpp"
#include "planarlab/dulac/instance.hpp"
#include "planarlab/interval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace planarlab {

enum class DulacVerdict { AtMostOneCycle, NoCycles, Unknown };

inline const char* to_string(DulacVerdict v) {
    switch (v) {
        case DulacVerdict::AtMostOneCycle: return "at-most-one-cycle";
        case DulacVerdict::NoCycles: return "no-cycles";
        default: return "unknown";
    }
}

struct BoxSignEvidence {
    bool attempted = false;
    bool definite = false;
    int sign = 0;
    int depth_used = 0;
    std::size_t leaves = 0;
};

struct LeadingFormEvidence {
    bool attempted = false;
    bool definite = false;
    int sign = 0;
    double min_abs = 0;            // certified lower bound of |L| on the unit circle
    double crossover_radius = 0;   // outside this radius the full polynomial keeps sign(L)
    int depth_used = 0;
};

struct DulacCertificate {
    DulacVerdict verdict = DulacVerdict::Unknown;
    int cofactor_sign = 0;
    bool used_hint = false;
    std::string method;  // "sturm-global" or "box+leading-form"
    Box box;
    int depth = 0;
    BoxSignEvidence box_check;
    LeadingFormEvidence leading_form;
    bool topology_checked = false;
    bool holed_component_possible = true;
    std::string topology_note;
    std::string explanation;  // nonempty explains an Unknown verdict
};

namespace dulac_detail {

// Index of the single variable a polynomial actually uses: -1 for constants,
// -2 when two or more variables appear.
inline int effective_variable(const RatPoly& p) {
    int var = -1;
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        if (p.degree_in(i) == 0) continue;
        if (var >= 0) return -2;
        var = static_cast<int>(i);
    }
    return var;
}

// Exact global sign of a polynomial using at most one variable: +1/-1 when a
// Sturm chain shows no real roots, 0 when roots exist or the input is
// genuinely multivariate.
inline int global_sign_univariate(const RatPoly& p) {
    if (p.is_zero()) return 0;
    int var = effective_variable(p);
    if (var == -2) return 0;
    if (var == -1) return qsign(p.constant_value());
    QPoly u = to_unipoly(p, static_cast<std::size_t>(var));
    QPoly sf = squarefree_part(u);
    auto chain = sturm_chain(sf);
    Rational bound = cauchy_root_bound(sf) + 1;
    if (sturm_count(chain, -bound, bound) > 0) return 0;
    return qsign(u.eval(Rational(0)));
}

inline bool merge_sign(int found, int& sign) {
    if (sign == 0) sign = found;
    return sign == found;
}

inline bool box_sign_rec(const RatPoly& p, const Box& b, int depth, int max_depth,
                         BoxSignEvidence& out) {
    Interval e = eval_box(p, b);
    int leaf_sign = e.lo > 0 ? 1 : (e.hi < 0 ? -1 : 0);
    if (leaf_sign != 0) {
        out.depth_used = std::max(out.depth_used, depth);
        ++out.leaves;
        return merge_sign(leaf_sign, out.sign);
    }
    if (depth == max_depth) return false;
    std::size_t dim = b.widest_dim();
    Box lo = b, hi = b;
    double mid = b[dim].mid();
    lo[dim].hi = mid;
    hi[dim].lo = mid;
    return box_sign_rec(p, lo, depth + 1, max_depth, out) &&
           box_sign_rec(p, hi, depth + 1, max_depth, out);
}

// L(1 - t^2, 2t) for t = tan(theta/2) sweeps the unit circle scaled by
// (1 + t^2); since L is homogeneous its sign is unchanged. The mirrored
// L(t^2 - 1, 2t) covers |tan(theta/2)| >= 1 including theta = pi.
inline RatPoly circle_parametrization(const RatPoly& L, bool mirrored) {
    std::vector<std::string> tv{"t"};
    RatPoly t = RatPoly::variable(tv, 0);
    RatPoly one = RatPoly::constant(tv, Rational(1));
    RatPoly xs = mirrored ? t * t - one : one - t * t;
    RatPoly ys = Rational(2) * t;
    RatPoly acc = RatPoly::constant(tv, Rational(0));
    for (auto& [e, c] : L.terms()) acc = acc + c * (xs.pow(e[0]) * ys.pow(e[1]));
    return acc;
}

// Upper bound on (1 + t^2)^d over [lo, hi], rounded outward.
inline double chart_scale_bound(double lo, double hi, std::uint32_t d) {
    double m = std::max(lo * lo, hi * hi);
    double base = detail::up(1.0 + detail::up(m));
    double s = 1.0;
    for (std::uint32_t i = 0; i < d; ++i) s = detail::up(s * base);
    return s;
}

inline bool circle_sign_rec(const RatPoly& p, std::uint32_t deg, double lo, double hi, int depth,
                            int min_depth, int max_depth, LeadingFormEvidence& out) {
    Interval e = eval_box(p, Box({Interval(lo, hi)}));
    int leaf_sign = e.lo > 0 ? 1 : (e.hi < 0 ? -1 : 0);
    // Keep splitting sign-definite leaves down to min_depth: the chart value
    // is (1 + t^2)^deg times the circle value, and the scale correction below
    // is only tight on narrow leaves.
    if (leaf_sign != 0 && depth >= min_depth) {
        double bound = (leaf_sign > 0 ? e.lo : -e.hi) / chart_scale_bound(lo, hi, deg);
        bound = detail::down(bound);
        out.min_abs = out.min_abs == 0 ? bound : std::min(out.min_abs, bound);
        out.depth_used = std::max(out.depth_used, depth);
        return merge_sign(leaf_sign, out.sign);
    }
    if (depth == max_depth) return false;
    double mid = 0.5 * (lo + hi);
    return circle_sign_rec(p, deg, lo, mid, depth + 1, min_depth, max_depth, out) &&
           circle_sign_rec(p, deg, mid, hi, depth + 1, min_depth, max_depth, out);
}

inline LeadingFormEvidence certify_leading_form(const RatPoly& L, int max_depth) {
    LeadingFormEvidence out;
    out.attempted = true;
    std::uint32_t d = L.total_degree();
    int min_depth = std::min(max_depth, 8);
    RatPoly p1 = circle_parametrization(L, false);
    RatPoly p2 = circle_parametrization(L, true);
    if (!circle_sign_rec(p1, d, -1.0, 1.0, 0, min_depth, max_depth, out)) return out;
    if (!circle_sign_rec(p2, d, -1.0, 1.0, 0, min_depth, max_depth, out)) return out;
    out.definite = true;
    return out;
}

// Upper bound on the sum of |coefficient| over the sub-leading terms; for
// r >= 1 those terms are bounded by S r^(d-1) while the leading form stays
// above min_abs * r^d, so the sign is decided outside r = S / min_abs.
inline double subleading_coefficient_sum(const RatPoly& p) {
    double s = 0;
    std::uint32_t d = p.total_degree();
    for (auto& [e, c] : p.terms()) {
        if (exp_total(e) == d) continue;
        s = detail::up(s + detail::up(std::abs(to_double(c))));
    }
    return s;
}

}  // namespace dulac_detail

inline DulacCertificate certify_dulac(const DulacInstance& inst, const Box& box, int depth) {
    if (box.size() != 2) throw std::invalid_argument("certify_dulac: box must be two-dimensional");
    if (depth < 0) throw std::invalid_argument("certify_dulac: negative depth");
    DulacCertificate cert;
    cert.box = box;
    cert.depth = depth;

    RatFn M = m_s(inst);
    if (M.is_zero()) {
        cert.explanation = "m_s vanishes identically, so it carries no sign information";
        return cert;
    }

    RatFn cof = M;
    if (inst.hint) {
        const RatPoly& f = inst.hint->factor;
        if (f.term_count() != 1)
            throw std::invalid_argument("certify_dulac: hint factor must be a monomial");
        for (auto& [e, c] : f.terms()) {
            for (auto ei : e)
                if (ei % 2 != 0)
                    throw std::invalid_argument("certify_dulac: hint factor exponents must be even");
            if (qsign(c) <= 0)
                throw std::invalid_argument("certify_dulac: hint factor coefficient must be positive");
        }
        if (!(RatFn(f) * inst.hint->cofactor == M))
            throw std::invalid_argument("certify_dulac: hint does not reproduce m_s");
        cof = inst.hint->cofactor;
        cert.used_hint = true;
    }

    // The theorem needs V to be C^1 on the plane, so a rational V must have a
    // nonvanishing denominator.
    if (!inst.V.is_polynomial() &&
        dulac_detail::global_sign_univariate(inst.V.den()) == 0) {
        cert.explanation = "the denominator of V could not be certified nonvanishing";
        return cert;
    }

    int num_sign = dulac_detail::global_sign_univariate(cof.num());
    int den_sign = dulac_detail::global_sign_univariate(cof.den());
    if (num_sign != 0 && den_sign != 0) {
        cert.cofactor_sign = num_sign * den_sign;
        cert.method = "sturm-global";
    } else if (den_sign != 0) {
        cert.box_check.attempted = true;
        bool box_ok = dulac_detail::box_sign_rec(cof.num(), box, 0, depth, cert.box_check);
        cert.box_check.definite = box_ok && cert.box_check.sign != 0;
        cert.leading_form = dulac_detail::certify_leading_form(
            cof.num().homogeneous_component(cof.num().total_degree()), depth);
        if (cert.box_check.definite && cert.leading_form.definite) {
            double s = dulac_detail::subleading_coefficient_sum(cof.num());
            double radius = std::max(1.0, detail::up(s / cert.leading_form.min_abs));
            cert.leading_form.crossover_radius = radius;
            bool covered = box[0].lo <= -radius && box[0].hi >= radius &&
                           box[1].lo <= -radius && box[1].hi >= radius;
            if (!covered) {
                cert.explanation =
                    "the box does not reach the radius where the leading form takes over";
            } else if (cert.box_check.sign != cert.leading_form.sign) {
                cert.explanation = "box and leading-form signs disagree";
            } else {
                cert.cofactor_sign = cert.box_check.sign * den_sign;
                cert.method = "box+leading-form";
            }
        }
    }

    if (cert.cofactor_sign == 0) {
        if (cert.explanation.empty()) {
            if (den_sign == 0)
                cert.explanation = "the cofactor denominator sign could not be certified";
            else if (inst.hint)
                cert.explanation = "the cofactor sign could not be certified at this depth";
            else
                cert.explanation =
                    "m_s is not certifiably sign-definite; if it only vanishes on an "
                    "even-monomial set, pass a factor hint";
        }
        return cert;
    }

    // Topology of {V = 0}: decided for constant V and for V quadratic in y,
    // otherwise left to the caller with a warning.
    bool no_hole = false;
    if (inst.V.num().is_constant() && inst.V.den().is_constant()) {
        cert.topology_checked = true;
        no_hole = true;
        cert.topology_note = "V is a nonzero constant: {V=0} is empty, no holed region exists";
    } else if (inst.V.den().degree_in(1) == 0 && inst.V.num().degree_in(1) == 2) {
        cert.topology_checked = true;
        RatFn dis = dis_y(inst.V);
        if (dulac_detail::global_sign_univariate(dis.num()) < 0) {
            no_hole = true;
            cert.topology_note =
                "V is quadratic in y and dis_y(V) is negative definite: {V=0} is empty, "
                "no holed region exists";
        } else {
            cert.topology_note =
                "V is quadratic in y: the complement of {V=0} has at most one holed component";
        }
    } else {
        cert.topology_note =
            "warning: topology of {V=0} not checked (V is not quadratic in y); the "
            "at-most-one-hole hypothesis is left to the caller";
    }
    cert.holed_component_possible = !no_hole;

    cert.verdict = (qsign(inst.s) < 0 && !no_hole) ? DulacVerdict::AtMostOneCycle
                                                   : DulacVerdict::NoCycles;
    return cert;
}

// Verdict for Dulac candidates outside the exact rational class (for example
// exponential V). Nothing can be certified, only documented.
inline DulacCertificate unrepresentable_dulac(const std::string& what) {
    DulacCertificate cert;
    cert.explanation = "Dulac candidate outside the exact rational class: " + what;
    return cert;
}

inline Json to_json(const DulacCertificate& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["cofactor_sign"] = c.cofactor_sign;
    j["used_hint"] = c.used_hint;
    j["method"] = c.method;
    Json box = Json::array();
    for (auto& d : c.box.dims) box.push_back(Json::array({d.lo, d.hi}));
    j["box"] = std::move(box);
    j["depth"] = c.depth;
    if (c.box_check.attempted) {
        j["box_check"] = Json{{"definite", c.box_check.definite},
                              {"sign", c.box_check.sign},
                              {"depth_used", c.box_check.depth_used},
                              {"leaves", c.box_check.leaves}};
    }
    if (c.leading_form.attempted) {
        j["leading_form"] = Json{{"definite", c.leading_form.definite},
                                 {"sign", c.leading_form.sign},
                                 {"min_abs", c.leading_form.min_abs},
                                 {"crossover_radius", c.leading_form.crossover_radius},
                                 {"depth_used", c.leading_form.depth_used}};
    }
    j["topology_checked"] = c.topology_checked;
    j["holed_component_possible"] = c.holed_component_possible;
    j["topology_note"] = c.topology_note;
    if (!c.explanation.empty()) j["explanation"] = c.explanation;
    return j;
}

}  // namespace planarlab
