#pragma once

// The singular periodic problem x(t)^p x''(t) = f(t) for positive periodic
// solutions: exact necessary conditions on f, and a damped-Newton shooting
// solver that enforces positivity along the orbit.

#include "planarlab/flow/integrate.hpp"
#include "planarlab/scalar/trigpoly.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace planarlab {

enum class SingularVerdict { FailsSign, FailsMean, Candidate };

inline const char* to_string(SingularVerdict v) {
    switch (v) {
        case SingularVerdict::FailsSign: return "fails-sign";
        case SingularVerdict::FailsMean: return "fails-mean";
        case SingularVerdict::Candidate: return "candidate";
    }
    return "?";
}

struct SingularNecessity {
    bool changes_sign = false;
    double mean = 0;
    SingularVerdict verdict = SingularVerdict::Candidate;
};

// Both conditions are forced by any positive periodic solution: f/x^p has
// zero mean (so f takes both signs), and integrating x^p x'' by parts gives
// a strictly negative mean for nonconstant x. Decided exactly on the
// harmonic table.
inline SingularNecessity singular_necessary(const TrigPoly& f, double T) {
    if (!(T > 0)) throw std::invalid_argument("singular_necessary: period must be positive");
    if (f.is_zero()) throw std::domain_error("singular_necessary: f is identically zero");
    SingularNecessity out;
    out.changes_sign = f.changes_sign();
    const Rational m = f.mean();
    out.mean = to_double(m);
    if (!out.changes_sign) {
        out.verdict = SingularVerdict::FailsSign;
    } else if (m >= 0) {
        out.verdict = SingularVerdict::FailsMean;
    } else {
        out.verdict = SingularVerdict::Candidate;
    }
    return out;
}

struct SingularShootResult {
    bool found = false;
    std::string reason;  // set when !found
    double x0 = 0, v0 = 0;
    Trajectory trajectory;  // dense solution over [0, T] when found
};

namespace detail {

inline OdeSystem singular_system(double p_exp, const TrigPoly& f, double omega) {
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [p_exp, f, omega](double t, const StateVec& s, StateVec& ds) {
        ds[0] = s[1];
        ds[1] = f.eval(omega * t) / std::pow(s[0], p_exp);
    };
    sys.pole_clearance = [](const StateVec& s) { return s[0]; };
    return sys;
}

}  // namespace detail

// Damped Newton on the shooting map (x0, v0) -> (x(T) - x0, x'(T) - v0).
// Steps whose orbit loses positivity (the integrator stalls on x -> 0) are
// rejected by halving.
inline SingularShootResult singular_shoot(double p_exp, const TrigPoly& f, double T,
                                          double x0_guess, double v0_guess, double tol = 1e-10) {
    if (!(p_exp > 0)) throw std::invalid_argument("singular_shoot: p must be positive");
    if (!(x0_guess > 0)) throw std::invalid_argument("singular_shoot: guess must have x0 > 0");

    SingularShootResult out;
    SingularNecessity nec = singular_necessary(f, T);
    if (nec.verdict != SingularVerdict::Candidate) {
        out.reason = std::string("necessary condition fails: ") + to_string(nec.verdict);
        return out;
    }

    const double omega = 2 * std::numbers::pi / T;
    OdeSystem sys = detail::singular_system(p_exp, f, omega);
    IntegrateOptions opts;
    opts.tol = tol;
    opts.store_dense = false;

    auto shoot = [&](double x0, double v0, double res[2]) -> bool {
        if (x0 <= 0) return false;
        StateVec s(2);
        s[0] = x0;
        s[1] = v0;
        Trajectory tr = integrate(sys, s, 0, T, opts);
        if (tr.outcome != FlowOutcome::Completed) return false;
        res[0] = tr.x_final[0] - x0;
        res[1] = tr.x_final[1] - v0;
        return true;
    };

    double x0 = x0_guess, v0 = v0_guess;
    double res[2];
    if (!shoot(x0, v0, res)) {
        out.reason = "initial guess loses positivity before T";
        return out;
    }

    auto norm = [](const double r[2]) { return std::max(std::fabs(r[0]), std::fabs(r[1])); };

    for (int it = 0; it < 60; ++it) {
        if (norm(res) < tol * std::max(1.0, std::fabs(x0))) {
            out.found = true;
            out.x0 = x0;
            out.v0 = v0;
            IntegrateOptions dense = opts;
            dense.store_dense = true;
            StateVec s(2);
            s[0] = x0;
            s[1] = v0;
            out.trajectory = integrate(sys, s, 0, T, dense);
            return out;
        }

        const double hx = 1e-7 * std::max(1.0, std::fabs(x0));
        const double hv = 1e-7 * std::max(1.0, std::fabs(v0));
        double rx[2], rv[2];
        if (!shoot(x0 + hx, v0, rx) || !shoot(x0, v0 + hv, rv)) {
            out.reason = "shooting map not differentiable at the iterate (positivity lost)";
            return out;
        }
        const double J00 = (rx[0] - res[0]) / hx, J01 = (rv[0] - res[0]) / hv;
        const double J10 = (rx[1] - res[1]) / hx, J11 = (rv[1] - res[1]) / hv;
        const double det = J00 * J11 - J01 * J10;
        if (std::fabs(det) < 1e-14) {
            out.reason = "singular shooting Jacobian";
            return out;
        }
        const double dx = (-res[0] * J11 + res[1] * J01) / det;
        const double dv = (-J00 * res[1] + J10 * res[0]) / det;

        bool stepped = false;
        double lambda = 1;
        for (int half = 0; half < 10; ++half, lambda /= 2) {
            double nres[2];
            if (!shoot(x0 + lambda * dx, v0 + lambda * dv, nres)) continue;
            if (norm(nres) < norm(res)) {
                x0 += lambda * dx;
                v0 += lambda * dv;
                res[0] = nres[0];
                res[1] = nres[1];
                stepped = true;
                break;
            }
        }
        if (!stepped) {
            out.reason = "Newton stalled (no damped step decreases the residual)";
            return out;
        }
    }
    out.reason = "iteration limit reached";
    return out;
}

}  // namespace planarlab
