#pragma once

// Adaptive explicit Runge-Kutta 5(4) (Dormand-Prince pair, FSAL) with a free
// 4th-order interpolant, PI step-size control, and event location on the
// dense output. Finite-time escape and pole proximity are first-class
// outcomes carried on the Trajectory, not exceptions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "planarlab/core/smallvec.hpp"
#include "planarlab/flow/field.hpp"

namespace planarlab {

enum class FlowOutcome { Completed, EventStop, BlowUp, Pole };

inline const char* to_string(FlowOutcome o) {
    switch (o) {
        case FlowOutcome::Completed: return "completed";
        case FlowOutcome::EventStop: return "event-stop";
        case FlowOutcome::BlowUp: return "blow-up";
        case FlowOutcome::Pole: return "pole";
    }
    return "?";
}

struct EventSpec {
    int id = 0;
    std::function<double(double, const StateVec&)> g;
    int direction = 0;      // +1: g increasing through 0, -1: decreasing, 0: any
    bool terminal = false;  // stop integration at the crossing
    int terminal_count = 1; // stop at the n-th accepted crossing
    double min_time = -std::numeric_limits<double>::infinity();
    // Extra acceptance filter on the crossing state (e.g. restrict a full
    // line to one ray); unset accepts everything.
    std::function<bool(const StateVec&)> accept;
};

struct EventRecord {
    int id = 0;
    double t = 0;
    StateVec state;
    int direction = 0;
};

// Interpolation data for one accepted step, continuous across the whole
// trajectory (Hairer's 4th-order free interpolant for DOPRI5).
struct DenseSegment {
    double t0 = 0, t1 = 0;
    StateVec r1, r2, r3, r4, r5;

    StateVec eval(double t) const {
        const double h = t1 - t0;
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        StateVec out(r1.size());
        for (std::size_t i = 0; i < r1.size(); ++i) {
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        }
        return out;
    }
};

struct Trajectory {
    int dim = 0;
    double t_start = 0;
    StateVec x0;
    std::vector<double> times;        // accepted step endpoints, monotone in flow direction
    std::vector<StateVec> states;     // states at `times`
    std::vector<DenseSegment> segments;
    std::vector<EventRecord> events;
    FlowOutcome outcome = FlowOutcome::Completed;
    double t_final = 0;
    StateVec x_final;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;

    // Dense-output sample; t clamped to the covered time range.
    StateVec sample(double t) const {
        if (segments.empty()) return x_final;
        const bool fwd = segments.front().t1 >= segments.front().t0;
        std::size_t lo = 0, hi = segments.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            const bool before = fwd ? (t > segments[mid].t1) : (t < segments[mid].t1);
            if (before) lo = mid + 1; else hi = mid;
        }
        return segments[lo].eval(std::clamp(t, std::min(segments[lo].t0, segments[lo].t1),
                                            std::max(segments[lo].t0, segments[lo].t1)));
    }
};

struct IntegrateOptions {
    double tol = 1e-10;       // used as both absolute and relative tolerance
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
    bool store_dense = true;  // keep all segments (events always see the current one)
    std::vector<EventSpec> events;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
inline constexpr double kA21 = 1.0 / 5;
inline constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
inline constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
inline constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                        kA54 = -212.0 / 729;
inline constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                        kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
inline constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                        kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// 5th-minus-4th order error weights.
inline constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                        kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
// Interpolant weights.
inline constexpr double kD1 = -12715105075.0 / 11282082432.0;
inline constexpr double kD3 = 87487479700.0 / 32700410799.0;
inline constexpr double kD4 = -10690763975.0 / 1880347072.0;
inline constexpr double kD5 = 701980252875.0 / 199316789632.0;
inline constexpr double kD6 = -1453857185.0 / 822651844.0;
inline constexpr double kD7 = 69997945.0 / 29380423.0;

inline bool finite(const StateVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) return false;
    }
    return true;
}

inline void sort_events(Trajectory& traj, double dir) {
    std::stable_sort(traj.events.begin(), traj.events.end(),
                     [dir](const EventRecord& a, const EventRecord& b) { return dir * a.t < dir * b.t; });
}

// Hairer's starting step heuristic (order 5).
inline double initial_step(const OdeSystem& sys, double t0, const StateVec& y0,
                           const StateVec& f0, double dir, double tol, double max_step) {
    const std::size_t n = y0.size();
    double dnf = 0, dny = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = tol + tol * std::fabs(y0[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, max_step);
    StateVec y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + dir * h * f0[i];
    sys.rhs(t0 + dir * h, y1, f1);
    if (!finite(f1)) return std::min(1e-8, max_step);
    double der2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = tol + tol * std::fabs(y0[i]);
        der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::sqrt(dnf), der2);
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    return std::min({100 * h, h1, max_step});
}

}  // namespace detail

// Integrates sys from (t0, x0) to t1 (either direction). Preconditions: tol
// >= 1e-13, x0 off the declared pole set, dim in 1..StateVec::kCapacity.
inline Trajectory integrate(const OdeSystem& sys, const StateVec& x0, double t0, double t1,
                            const IntegrateOptions& opts = {}) {
    using namespace detail;
    if (opts.tol < 1e-13) throw std::invalid_argument("integrate: tol below 1e-13");
    if (sys.dim < 1 || static_cast<std::size_t>(sys.dim) > StateVec::kCapacity) {
        throw std::invalid_argument("integrate: dimension out of range");
    }
    if (x0.size() != static_cast<std::size_t>(sys.dim)) {
        throw std::invalid_argument("integrate: state size mismatch");
    }
    const double kPoleTol = 1e-12;
    if (sys.pole_clearance && sys.pole_clearance(x0) < kPoleTol) {
        throw std::invalid_argument("integrate: initial state on the pole set");
    }

    Trajectory traj;
    traj.dim = sys.dim;
    traj.t_start = t0;
    traj.x0 = x0;
    traj.times.push_back(t0);
    traj.states.push_back(x0);
    traj.t_final = t0;
    traj.x_final = x0;

    const std::size_t n = x0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    if (span == 0) return traj;

    StateVec y = x0;
    double t = t0;
    StateVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    sys.rhs(t, y, k1);
    if (!finite(k1)) {
        traj.outcome = FlowOutcome::Pole;
        return traj;
    }

    double h = std::min(initial_step(sys, t, y, k1, dir, opts.tol, opts.max_step), span);
    double err_prev = 1e-4;
    bool just_rejected = false;

    // Event bookkeeping: value of each g at the end of the previous step,
    // plus accepted-crossing counts for terminal_count.
    std::vector<double> gprev(opts.events.size());
    std::vector<int> ev_hits(opts.events.size(), 0);
    for (std::size_t e = 0; e < opts.events.size(); ++e) gprev[e] = opts.events[e].g(t, y);

    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        if (std::fabs(t - t1) <= 1e-15 * std::max(1.0, std::fabs(t1))) break;
        h = std::min(h, std::fabs(t1 - t));
        const double hs = dir * h;

        if (h < 1e-14 * std::max(1.0, std::fabs(t))) {
            traj.outcome = (y.norm_inf() > 1e8) ? FlowOutcome::BlowUp : FlowOutcome::Pole;
            detail::sort_events(traj, dir);
            return traj;
        }

        auto stage = [&](StateVec& out, std::initializer_list<std::pair<double, const StateVec*>> ks) {
            out = y;
            for (auto& [c, k] : ks) out.axpy(hs * c, *k);
        };
        stage(ytmp, {{kA21, &k1}});
        sys.rhs(t + kC2 * hs, ytmp, k2);
        stage(ytmp, {{kA31, &k1}, {kA32, &k2}});
        sys.rhs(t + kC3 * hs, ytmp, k3);
        stage(ytmp, {{kA41, &k1}, {kA42, &k2}, {kA43, &k3}});
        sys.rhs(t + kC4 * hs, ytmp, k4);
        stage(ytmp, {{kA51, &k1}, {kA52, &k2}, {kA53, &k3}, {kA54, &k4}});
        sys.rhs(t + kC5 * hs, ytmp, k5);
        stage(ytmp, {{kA61, &k1}, {kA62, &k2}, {kA63, &k3}, {kA64, &k4}, {kA65, &k5}});
        sys.rhs(t + hs, ytmp, k6);
        stage(ynew, {{kB1, &k1}, {kB3, &k3}, {kB4, &k4}, {kB5, &k5}, {kB6, &k6}});
        sys.rhs(t + hs, ynew, k7);  // FSAL stage

        bool stages_ok = finite(k2) && finite(k3) && finite(k4) && finite(k5) && finite(k6) &&
                         finite(k7) && finite(ynew);
        double err = 0;
        if (stages_ok) {
            for (std::size_t i = 0; i < n; ++i) {
                const double ei = hs * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                                        kE6 * k6[i] + kE7 * k7[i]);
                const double sc = opts.tol + opts.tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / static_cast<double>(n));
        } else {
            err = 10.0;  // force rejection and step shrink
        }

        if (err > 1.0) {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            ++traj.steps_rejected;
            just_rejected = true;
            continue;
        }

        // Accepted: build the interpolant, then locate events inside the step.
        DenseSegment seg;
        seg.t0 = t;
        seg.t1 = t + hs;
        seg.r1 = y;
        seg.r2 = StateVec(n);
        seg.r3 = StateVec(n);
        seg.r4 = StateVec(n);
        seg.r5 = StateVec(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ydiff = ynew[i] - y[i];
            const double bspl = hs * k1[i] - ydiff;
            seg.r2[i] = ydiff;
            seg.r3[i] = bspl;
            seg.r4[i] = ydiff - hs * k7[i] - bspl;
            seg.r5[i] = hs * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] +
                              kD6 * k6[i] + kD7 * k7[i]);
        }

        bool stop = false;
        double t_stop = seg.t1;
        for (std::size_t e = 0; e < opts.events.size() && !stop; ++e) {
            const EventSpec& ev = opts.events[e];
            // Scan 8 subintervals of the dense output for sign changes.
            double ta = seg.t0, ga = gprev[e];
            for (int j = 1; j <= 8; ++j) {
                const double tb = seg.t0 + hs * (j / 8.0);
                const double gb = ev.g(tb, seg.eval(tb));
                const bool crossed = (ga < 0 && gb >= 0) || (ga > 0 && gb <= 0);
                if (crossed) {
                    const int cross_dir = (gb >= ga) ? +1 : -1;
                    if (ev.direction == 0 || ev.direction == cross_dir) {
                        double lo = ta, hi = tb, glo = ga;
                        while (std::fabs(hi - lo) > 1e-12) {
                            const double mid = 0.5 * (lo + hi);
                            const double gm = ev.g(mid, seg.eval(mid));
                            if ((glo < 0) == (gm < 0)) { lo = mid; glo = gm; } else { hi = mid; }
                        }
                        const double te = 0.5 * (lo + hi);
                        const bool time_ok = !std::isfinite(ev.min_time) || (te - ev.min_time) * dir >= 0;
                        if (time_ok) {
                            EventRecord rec{ev.id, te, seg.eval(te), cross_dir};
                            if (!ev.accept || ev.accept(rec.state)) {
                                traj.events.push_back(rec);
                                if (ev.terminal && ++ev_hits[e] >= ev.terminal_count) {
                                    stop = true;
                                    t_stop = te;
                                    break;
                                }
                            }
                        }
                    }
                }
                ta = tb;
                ga = gb;
            }
            gprev[e] = ga;
        }

        t = seg.t1;
        y = ynew;
        k1 = k7;  // FSAL
        ++traj.steps_accepted;

        if (stop) {
            // The segment keeps its full [t0, t0+hs] parametrization (the
            // interpolant is scaled to the whole step); the trajectory itself
            // ends at the event time. Crossings another event spec recorded
            // beyond the stop time in this same step are discarded.
            std::erase_if(traj.events,
                          [&](const EventRecord& r) { return dir * (r.t - t_stop) > 1e-15; });
            const StateVec ystop = seg.eval(t_stop);
            traj.times.push_back(t_stop);
            traj.states.push_back(ystop);
            if (opts.store_dense) traj.segments.push_back(seg);
            traj.t_final = t_stop;
            traj.x_final = ystop;
            traj.outcome = FlowOutcome::EventStop;
            detail::sort_events(traj, dir);
            return traj;
        }

        traj.times.push_back(t);
        traj.states.push_back(y);
        if (opts.store_dense) traj.segments.push_back(seg);
        traj.t_final = t;
        traj.x_final = y;

        if (sys.pole_clearance && sys.pole_clearance(y) < kPoleTol) {
            traj.outcome = FlowOutcome::Pole;
            detail::sort_events(traj, dir);
            return traj;
        }

        // PI controller (accepted step): grow/shrink from this and the
        // previous error estimate; no growth straight after a rejection.
        const double e_clamped = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e_clamped, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        if (just_rejected) fac = std::min(fac, 1.0);
        just_rejected = false;
        h = std::min(h * fac, opts.max_step);
        err_prev = e_clamped;
    }

    if (std::fabs(t - t1) > 1e-10 * std::max(1.0, std::fabs(t1))) {
        throw std::runtime_error("integrate: max step count exhausted");
    }
    traj.outcome = FlowOutcome::Completed;
    detail::sort_events(traj, dir);
    return traj;
}

inline Trajectory integrate(const VectorField2& vf, const StateVec& x0, double t0, double t1,
                            const IntegrateOptions& opts = {}) {
    return integrate(ode_system(vf), x0, t0, t1, opts);
}

}  // namespace planarlab
