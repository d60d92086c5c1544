#pragma once

// Limit-cycle detection on a section: bracket sign changes of Pi(r) - r,
// bisect, then estimate hyperbolicity two independent ways (Richardson
// finite differences of the return map, and the boundary-factor x
// divergence-integral formula for the derivative of the return map).

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "planarlab/cycles/section.hpp"

namespace planarlab {

enum class CycleClass { HyperbolicStable, HyperbolicUnstable, NonHyperbolicCandidate };

inline const char* to_string(CycleClass c) {
    switch (c) {
        case CycleClass::HyperbolicStable: return "hyperbolic-stable";
        case CycleClass::HyperbolicUnstable: return "hyperbolic-unstable";
        case CycleClass::NonHyperbolicCandidate: return "non-hyperbolic-candidate";
    }
    return "?";
}

struct Cycle {
    double r_star = 0;
    double pi_prime = 0;
    CycleClass classification = CycleClass::NonHyperbolicCandidate;
    double period = 0;
};

struct FindCyclesResult {
    std::vector<Cycle> cycles;
    bool continuum = false;  // |Pi(r) - r| < 1e-8 across the whole grid
    std::vector<SkippedGridPoint> skipped;
};

struct FindCyclesOptions {
    ReturnOptions ret;
    double bisect_tol = 1e-10;       // on r
    double fd_step_rel = 1e-4;       // Richardson base step, relative to max(1, r*)
    double hyperbolic_margin = 1e-5; // |Pi' - 1| below this is a candidate
    double continuum_tol = 1e-8;
};

// Central finite difference of Pi with one Richardson extrapolation step.
inline double return_map_derivative(const VectorField2& vf, const Section& sec, double r,
                                    const FindCyclesOptions& opts = {}) {
    auto piv = [&](double rr) {
        ReturnResult res = return_map(vf, sec, rr, opts.ret);
        if (res.status != ReturnStatus::Ok) {
            throw std::runtime_error(std::string("return_map_derivative: ") + to_string(res.status));
        }
        return res.sample.pi;
    };
    const double h = opts.fd_step_rel * std::max(1.0, std::fabs(r));
    const double d_h = (piv(r + h) - piv(r - h)) / (2 * h);
    const double d_h2 = (piv(r + h / 2) - piv(r - h / 2)) / h;
    return (4 * d_h2 - d_h) / 3;
}

inline FindCyclesResult find_cycles(const VectorField2& vf, const Section& sec,
                                    const std::vector<double>& grid,
                                    const FindCyclesOptions& opts = {}) {
    if (grid.size() < 2) throw std::invalid_argument("find_cycles: need at least 2 grid points");

    FindCyclesResult out;
    std::vector<double> rs, gaps;  // successful grid points and Pi(r) - r
    for (double r : grid) {
        ReturnResult res = return_map(vf, sec, r, opts.ret);
        if (res.status != ReturnStatus::Ok) {
            out.skipped.push_back({r, res.status});
            continue;
        }
        rs.push_back(r);
        gaps.push_back(res.sample.pi - r);
    }
    if (rs.size() < 2) return out;

    bool all_fixed = true;
    for (double g : gaps) {
        if (std::fabs(g) >= opts.continuum_tol) all_fixed = false;
    }
    if (all_fixed) {
        out.continuum = true;
        return out;
    }

    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        double a = rs[i], b = rs[i + 1], ga = gaps[i], gb = gaps[i + 1];
        if (!((ga < 0 && gb > 0) || (ga > 0 && gb < 0))) continue;
        bool failed = false;
        while (b - a > opts.bisect_tol) {
            const double mid = 0.5 * (a + b);
            ReturnResult res = return_map(vf, sec, mid, opts.ret);
            if (res.status != ReturnStatus::Ok) {
                out.skipped.push_back({mid, res.status});
                failed = true;
                break;
            }
            const double gm = res.sample.pi - mid;
            if ((gm < 0) == (ga < 0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
                gb = gm;
            }
        }
        if (failed) continue;

        Cycle c;
        c.r_star = 0.5 * (a + b);
        ReturnResult at = return_map(vf, sec, c.r_star, opts.ret);
        if (at.status == ReturnStatus::Ok) c.period = at.sample.T;
        c.pi_prime = return_map_derivative(vf, sec, c.r_star, opts);
        if (std::fabs(c.pi_prime - 1) < opts.hyperbolic_margin) {
            c.classification = CycleClass::NonHyperbolicCandidate;
        } else {
            c.classification = c.pi_prime < 1 ? CycleClass::HyperbolicStable
                                              : CycleClass::HyperbolicUnstable;
        }
        out.cycles.push_back(c);
    }
    return out;
}

struct PiPrimeOptions {
    double tol = 1e-12;
    double max_time = 1e4;
};

/// One transition leg of the derivative formula: orbit from sec_from.point(r)
// to its first crossing of sec_to, contributing
//   <X(start), n_from> / <X(end), n_to> * exp(integral of div X dt)
// with n = rotate(direction, +90 deg). The divergence is integrated as an
// augmented state component, so it rides the same error control as the orbit.
inline double pi_prime_leg(const VectorField2& vf, const Section& sec_from, const Section& sec_to,
                           double r, const PiPrimeOptions& opts = {}) {
    double x0, y0, fx, fy;
    sec_from.point(r, x0, y0);
    vf.eval(x0, y0, fx, fy);
    const double num = -fx * sec_from.dir_y + fy * sec_from.dir_x;
    if (std::fabs(num) < 1e-14 * std::hypot(fx, fy)) {
        throw std::domain_error("pi_prime_leg: section tangent to the field at start");
    }

    const RatFn div = vf.divergence();
    const CompiledPoly dn(div.num()), dd(div.den());

    OdeSystem sys;
    sys.dim = 3;
    sys.rhs = [&vf, &dn, &dd](double, const StateVec& s, StateVec& ds) {
        vf.eval(s[0], s[1], ds[0], ds[1]);
        const double p[2] = {s[0], s[1]};
        ds[2] = dn(p) / dd(p);
    };

    IntegrateOptions io;
    io.tol = opts.tol;
    io.store_dense = false;
    EventSpec ev;
    ev.g = [sec_to](double, const StateVec& s) { return sec_to.cross(s[0], s[1]); };
    ev.direction = 0;
    ev.terminal = true;
    ev.accept = [sec_to](const StateVec& s) {
        const double a = sec_to.along(s[0], s[1]);
        return a > 0 && a <= sec_to.r_max * (1 + 1e-9);
    };
    io.events.push_back(ev);

    Trajectory tr = integrate(sys, StateVec{x0, y0, 0.0}, 0.0, opts.max_time, io);
    if (tr.outcome != FlowOutcome::EventStop) {
        throw std::runtime_error("pi_prime_leg: orbit did not reach the target section");
    }
    double fxe, fye;
    vf.eval(tr.x_final[0], tr.x_final[1], fxe, fye);
    const double den = -fxe * sec_to.dir_y + fye * sec_to.dir_x;
    if (std::fabs(den) < 1e-14 * std::hypot(fxe, fye)) {
        throw std::domain_error("pi_prime_leg: section tangent to the field at arrival");
    }
    return (num / den) * std::exp(tr.x_final[2]);
}

// Derivative of the full return map at the closed orbit through
// sec.point(r_star): boundary factor (computed, not assumed 1) times the
// exponential of the divergence integral over one period.
inline double pi_prime_formula(const VectorField2& vf, const Section& sec, double r_star,
                               const PiPrimeOptions& opts = {}) {
    double x0, y0, fx, fy;
    sec.point(r_star, x0, y0);
    vf.eval(x0, y0, fx, fy);
    const double num = -fx * sec.dir_y + fy * sec.dir_x;
    if (std::fabs(num) < 1e-14 * std::hypot(fx, fy)) {
        throw std::domain_error("pi_prime_formula: section tangent to the field");
    }
    const int orientation = num > 0 ? +1 : -1;

    const RatFn div = vf.divergence();
    const CompiledPoly dn(div.num()), dd(div.den());
    OdeSystem sys;
    sys.dim = 3;
    sys.rhs = [&vf, &dn, &dd](double, const StateVec& s, StateVec& ds) {
        vf.eval(s[0], s[1], ds[0], ds[1]);
        const double p[2] = {s[0], s[1]};
        ds[2] = dn(p) / dd(p);
    };

    IntegrateOptions io;
    io.tol = opts.tol;
    io.store_dense = false;
    EventSpec ev;
    ev.g = [sec](double, const StateVec& s) { return sec.cross(s[0], s[1]); };
    ev.direction = orientation;
    ev.terminal = true;
    ev.accept = [sec](const StateVec& s) {
        const double a = sec.along(s[0], s[1]);
        return a > 0 && a <= sec.r_max * (1 + 1e-9);
    };
    io.events.push_back(ev);

    Trajectory tr = integrate(sys, StateVec{x0, y0, 0.0}, 0.0, opts.max_time, io);
    if (tr.outcome != FlowOutcome::EventStop) {
        throw std::runtime_error("pi_prime_formula: orbit did not return to the section");
    }
    double fxe, fye;
    vf.eval(tr.x_final[0], tr.x_final[1], fxe, fye);
    const double den = -fxe * sec.dir_y + fye * sec.dir_x;
    return (num / den) * std::exp(tr.x_final[2]);
}

}  // namespace planarlab
