#pragma once

// Crossing dynamics for two-zone piecewise-linear systems: zone-by-zone
// integration with curve-hit events, the composed crossing return map along
// the separation graph, and the fixed-point search for crossing cycles.
// Sliding and tangency are hard errors, matching the crossing-only setting.

#include "planarlab/cycles/find.hpp"
#include "planarlab/flow/integrate.hpp"
#include "planarlab/pwl/system.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace planarlab {

struct SlidingError : std::runtime_error {
    double x, y, t;
    SlidingError(double px, double py, double pt)
        : std::runtime_error("sliding reached at the separation curve"), x(px), y(py), t(pt) {}
};

struct TangencyError : std::runtime_error {
    double x, y, t;
    TangencyError(double px, double py, double pt)
        : std::runtime_error("tangency reached at the separation curve"), x(px), y(py), t(pt) {}
};

struct PwlCrossing {
    double t = 0;
    double x = 0, y = 0;
    int from_zone = 0;  // +1 upper, -1 lower
};

struct PwlTrajectory {
    std::vector<Trajectory> pieces;
    std::vector<int> zones;  // zone of each piece
    std::vector<PwlCrossing> crossings;
    double t_final = 0;
    double x_final = 0, y_final = 0;
    bool completed = false;

    // Dense-output sample across pieces; t clamped to the covered range.
    std::pair<double, double> sample(double t) const {
        for (const Trajectory& piece : pieces) {
            if (t <= piece.t_final || &piece == &pieces.back()) {
                StateVec s = piece.sample(t);
                return {s[0], s[1]};
            }
        }
        return {x_final, y_final};
    }
};

struct PwlIntegrateOptions {
    double tol = 1e-10;
    double tangency_tol = 1e-10;
    double min_leg_time = 1e-9;  // guards the curve-hit event right after a switch
    std::size_t max_crossings = 100000;
};

namespace pwl_detail {

// Normal component of a field against the curve normal (-c'(x), 1); its sign
// says which side of the graph the motion is heading to.
inline double gdot(const PwlSystem& sys, bool upper_field, double x, double y) {
    double dx, dy;
    if (upper_field)
        sys.upper(x, y, dx, dy);
    else
        sys.lower(x, y, dx, dy);
    return dy - sys.sep_slope(x) * dx;
}

inline EventSpec curve_hit_event(const PwlSystem& sys, int zone, double t_from, double min_leg) {
    EventSpec hit;
    hit.id = 1;
    hit.g = [&sys](double, const StateVec& s) { return sys.side(s[0], s[1]); };
    hit.direction = -zone;
    hit.terminal = true;
    hit.min_time = t_from + min_leg;
    return hit;
}

}  // namespace pwl_detail

inline PwlTrajectory pwl_integrate(const PwlSystem& sys, double x0, double y0, double t0,
                                   double t1, const PwlIntegrateOptions& opts = {}) {
    double side0 = sys.side(x0, y0);
    if (side0 == 0) throw std::invalid_argument("pwl_integrate: start lies on the separation curve");
    if (t1 <= t0) throw std::invalid_argument("pwl_integrate: empty time span");

    OdeSystem upper = ode_system(VectorField2(sys.upper_p, sys.upper_q));
    OdeSystem lower = ode_system(VectorField2(sys.lower_p, sys.lower_q));

    PwlTrajectory out;
    int zone = side0 > 0 ? 1 : -1;
    double t = t0;
    StateVec state{x0, y0};
    while (true) {
        IntegrateOptions iopts;
        iopts.tol = opts.tol;
        iopts.events.push_back(pwl_detail::curve_hit_event(sys, zone, t, opts.min_leg_time));
        Trajectory piece = integrate(zone > 0 ? upper : lower, state, t, t1, iopts);
        out.pieces.push_back(piece);
        out.zones.push_back(zone);
        if (piece.outcome != FlowOutcome::EventStop) {
            out.completed = piece.outcome == FlowOutcome::Completed;
            out.t_final = piece.t_final;
            out.x_final = piece.x_final[0];
            out.y_final = piece.x_final[1];
            return out;
        }

        const EventRecord& hit = piece.events.back();
        double hx = hit.state[0], hy = hit.state[1];
        double g_here = pwl_detail::gdot(sys, zone > 0, hx, hy);
        double g_there = pwl_detail::gdot(sys, zone < 0, hx, hy);
        if (std::abs(g_here) < opts.tangency_tol || std::abs(g_there) < opts.tangency_tol)
            throw TangencyError(hx, hy, hit.t);
        if (g_here * g_there < 0) throw SlidingError(hx, hy, hit.t);
        out.crossings.push_back({hit.t, hx, hy, zone});
        if (out.crossings.size() >= opts.max_crossings)
            throw std::runtime_error("pwl_integrate: crossing limit exceeded");
        zone = -zone;
        t = hit.t;
        state = hit.state;
    }
}

struct CrossingLeg {
    double x_to = 0;
    double time = 0;
    double gdot_in = 0;   // active field at the entry point
    double gdot_out = 0;  // active field at the exit point
};

// One transition of the crossing map: enter `zone` at (x, c(x)), flow until
// the curve is hit again. Throws TangencyError when the field fails to leave
// the curve cleanly.
inline CrossingLeg crossing_leg(const PwlSystem& sys, int zone, double x_from,
                                const PwlIntegrateOptions& opts = {}) {
    double y_from = sys.sep_at(x_from);
    double gin = pwl_detail::gdot(sys, zone > 0, x_from, y_from);
    if (std::abs(gin) < opts.tangency_tol) throw TangencyError(x_from, y_from, 0);
    if (gin * zone < 0)
        throw std::invalid_argument("crossing_leg: field does not enter the requested zone");

    OdeSystem field = ode_system(zone > 0 ? VectorField2(sys.upper_p, sys.upper_q)
                                          : VectorField2(sys.lower_p, sys.lower_q));
    IntegrateOptions iopts;
    iopts.tol = opts.tol;
    iopts.store_dense = false;
    iopts.events.push_back(pwl_detail::curve_hit_event(sys, zone, 0, opts.min_leg_time));
    Trajectory leg = integrate(field, StateVec{x_from, y_from}, 0, 1e6, iopts);
    if (leg.outcome != FlowOutcome::EventStop)
        throw std::runtime_error(std::string("crossing_leg: no curve return (") +
                                 to_string(leg.outcome) + ")");
    const EventRecord& hit = leg.events.back();
    CrossingLeg out;
    out.x_to = hit.state[0];
    out.time = hit.t;
    out.gdot_in = gin;
    out.gdot_out = pwl_detail::gdot(sys, zone > 0, hit.state[0], hit.state[1]);
    if (std::abs(out.gdot_out) < opts.tangency_tol) throw TangencyError(hit.state[0], hit.state[1], hit.t);
    return out;
}

struct CrossingReturn {
    double x_ret = 0;
    double x_mid = 0;
    double period = 0;
    double pi_prime = 0;  // boundary-factor product with exact exp(div * t)
};

// Full crossing return map from the upward-crossing point x: upper leg to
// x_mid, crossing check, lower leg back. Throws SlidingError/TangencyError
// like the integrator.
inline CrossingReturn crossing_return(const PwlSystem& sys, double x,
                                      const PwlIntegrateOptions& opts = {}) {
    CrossingLeg up = crossing_leg(sys, 1, x, opts);
    double y_mid = sys.sep_at(up.x_to);
    double g_lower = pwl_detail::gdot(sys, false, up.x_to, y_mid);
    if (std::abs(g_lower) < opts.tangency_tol) throw TangencyError(up.x_to, y_mid, up.time);
    if (up.gdot_out * g_lower < 0) throw SlidingError(up.x_to, y_mid, up.time);
    CrossingLeg down = crossing_leg(sys, -1, up.x_to, opts);

    CrossingReturn out;
    out.x_mid = up.x_to;
    out.x_ret = down.x_to;
    out.period = up.time + down.time;
    out.pi_prime = (up.gdot_in / up.gdot_out) * std::exp(sys.upper_div() * up.time) *
                   (down.gdot_in / down.gdot_out) * std::exp(sys.lower_div() * down.time);
    return out;
}

struct CrossingCycle {
    double x_star = 0;
    double x_mid = 0;
    double period = 0;
    double pi_prime = 0;     // boundary-factor route
    double pi_prime_fd = 0;  // finite-difference route
    CycleClass classification = CycleClass::NonHyperbolicCandidate;
};

struct SkippedCrossingPoint {
    double x = 0;
    std::string reason;
};

struct CrossingCyclesResult {
    std::vector<CrossingCycle> cycles;
    bool continuum = false;
    std::vector<SkippedCrossingPoint> skipped;
};

struct CrossingCyclesOptions {
    PwlIntegrateOptions flow;
    double bisect_tol = 1e-10;
    double residual_tol = 1e-6;  // rejects sign changes caused by map jumps
    double fd_step_rel = 1e-4;
    double hyperbolic_margin = 1e-5;
    double continuum_tol = 1e-8;
};

inline CrossingCyclesResult crossing_cycles(const PwlSystem& sys, const std::vector<double>& grid,
                                            const CrossingCyclesOptions& opts = {}) {
    if (grid.size() < 2) throw std::invalid_argument("crossing_cycles: need at least two grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("crossing_cycles: grid must be increasing");

    CrossingCyclesResult out;
    std::vector<std::optional<double>> g(grid.size());
    auto displacement = [&](double x) -> std::optional<double> {
        try {
            return crossing_return(sys, x, opts.flow).x_ret - x;
        } catch (const SlidingError&) {
            out.skipped.push_back({x, "sliding"});
        } catch (const TangencyError&) {
            out.skipped.push_back({x, "tangency"});
        } catch (const std::exception& e) {
            out.skipped.push_back({x, e.what()});
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < grid.size(); ++i) g[i] = displacement(grid[i]);

    bool all_flat = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!g[i] || std::abs(*g[i]) > opts.continuum_tol) all_flat = false;
    if (all_flat) {
        out.continuum = true;
        return out;
    }

    auto add_cycle = [&](double a, double ga, double b) {
        double fa = ga;
        for (int it = 0; it < 200 && b - a > opts.bisect_tol; ++it) {
            double mid = 0.5 * (a + b);
            std::optional<double> fm = displacement(mid);
            if (!fm) return;  // lost the bracket to a sliding/tangency window
            if ((fa < 0) == (*fm < 0)) {
                a = mid;
                fa = *fm;
            } else {
                b = mid;
            }
        }
        double x_star = 0.5 * (a + b);
        for (const CrossingCycle& c : out.cycles)
            if (std::abs(c.x_star - x_star) < 1e-7 * std::max(1.0, std::abs(x_star))) return;

        CrossingReturn ret = crossing_return(sys, x_star, opts.flow);
        // Grazing contacts make the crossing map jump; a bracketed sign
        // change across a jump is not a fixed point.
        if (std::abs(ret.x_ret - x_star) > opts.residual_tol) {
            out.skipped.push_back({x_star, "sign change without a fixed point (map jump)"});
            return;
        }
        CrossingCycle cyc;
        cyc.x_star = x_star;
        cyc.x_mid = ret.x_mid;
        cyc.period = ret.period;
        cyc.pi_prime = ret.pi_prime;
        double h = opts.fd_step_rel * std::max(std::abs(x_star), 1.0);
        CrossingReturn plus = crossing_return(sys, x_star + h, opts.flow);
        CrossingReturn minus = crossing_return(sys, x_star - h, opts.flow);
        cyc.pi_prime_fd = (plus.x_ret - minus.x_ret) / (2 * h);
        if (std::abs(cyc.pi_prime - 1.0) <= opts.hyperbolic_margin)
            cyc.classification = CycleClass::NonHyperbolicCandidate;
        else
            cyc.classification = std::abs(cyc.pi_prime) < 1.0 ? CycleClass::HyperbolicStable
                                                              : CycleClass::HyperbolicUnstable;
        out.cycles.push_back(cyc);
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!g[i] || !g[i + 1]) continue;
        if (*g[i] == 0) add_cycle(grid[i], -1e-300, grid[i]);  // exact grid hit
        if ((*g[i] < 0) != (*g[i + 1] < 0)) add_cycle(grid[i], *g[i], grid[i + 1]);
    }
    if (!g.empty() && g.back() && *g.back() == 0) add_cycle(grid.back(), -1e-300, grid.back());
    return out;
}

}  // namespace planarlab
