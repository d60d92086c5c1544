#pragma once

// Transversal sections (rays by default), the first-return map, and timed
// section-to-section transits. Return maps drive limit-cycle detection and
// period functions; transits drive everything piecewise and equivariant.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "planarlab/flow/integrate.hpp"

namespace planarlab {

// Ray {base + r * dir : r in [r_min, r_max]} with |dir| = 1. The default
// base is an equilibrium, so r is a radial coordinate.
struct Section {
    double base_x = 0, base_y = 0;
    double dir_x = 1, dir_y = 0;
    double r_min = 0, r_max = 1e6;

    Section() = default;
    Section(double bx, double by, double dx, double dy, double rmin, double rmax)
        : base_x(bx), base_y(by), r_min(rmin), r_max(rmax) {
        const double n = std::hypot(dx, dy);
        if (n == 0) throw std::invalid_argument("Section: zero direction");
        dir_x = dx / n;
        dir_y = dy / n;
        if (!(rmin < rmax)) throw std::invalid_argument("Section: empty range");
    }

    static Section ray(double angle, double rmin, double rmax, double bx = 0, double by = 0) {
        return Section(bx, by, std::cos(angle), std::sin(angle), rmin, rmax);
    }
    static Section positive_x_axis(double rmin, double rmax) {
        return Section(0, 0, 1, 0, rmin, rmax);
    }

    void point(double r, double& x, double& y) const {
        x = base_x + r * dir_x;
        y = base_y + r * dir_y;
    }
    // Along-ray and cross-ray coordinates of a point.
    double along(double x, double y) const { return (x - base_x) * dir_x + (y - base_y) * dir_y; }
    double cross(double x, double y) const { return -(x - base_x) * dir_y + (y - base_y) * dir_x; }

    // |normal component| / |field| at parameter r; 0 means tangency.
    double transversality(const VectorField2& vf, double r) const {
        double x, y, fx, fy;
        point(r, x, y);
        vf.eval(x, y, fx, fy);
        const double n = std::hypot(fx, fy);
        if (n == 0) return 0;
        return std::fabs(cross(base_x + fx, base_y + fy)) / n;
    }
};

enum class ReturnStatus { Ok, NoReturn, BlowUp, LeftDomain };

inline const char* to_string(ReturnStatus s) {
    switch (s) {
        case ReturnStatus::Ok: return "ok";
        case ReturnStatus::NoReturn: return "no-return";
        case ReturnStatus::BlowUp: return "blow-up";
        case ReturnStatus::LeftDomain: return "left-domain";
    }
    return "?";
}

struct ReturnSample {
    double r = 0;
    double pi = 0;   // first-return coordinate Pi(r)
    double T = 0;    // return time, > 0
    int winding = 1; // returns taken before stopping
};

struct ReturnResult {
    ReturnStatus status = ReturnStatus::NoReturn;
    ReturnSample sample;
    Trajectory trajectory;  // up to the stop point (dense only when requested)
};

struct SkippedGridPoint {
    double r = 0;
    ReturnStatus status = ReturnStatus::NoReturn;
};

struct ReturnOptions {
    double tol = 1e-12;
    double max_time = 1e4;
    int winding = 1;         // take the winding-th return
    bool keep_trajectory = false;
    double domain_radius = 1e6;  // leaving this disc counts as LeftDomain
};

// First return of the orbit through section.point(r) to the same section
// side, same crossing orientation, located by event detection on the dense
// output. The crossing orientation is fixed by the field at the start point.
inline ReturnResult return_map(const VectorField2& vf, const Section& sec, double r,
                               const ReturnOptions& opts = {}) {
    if (r < sec.r_min || r > sec.r_max) throw std::invalid_argument("return_map: r outside section range");
    double x0, y0, fx, fy;
    sec.point(r, x0, y0);
    vf.eval(x0, y0, fx, fy);
    const double fnorm = std::hypot(fx, fy);
    const double nu = -fx * sec.dir_y + fy * sec.dir_x;  // normal component at start
    if (fnorm == 0 || std::fabs(nu) < 1e-12 * fnorm) {
        throw std::domain_error("return_map: section tangent to the field at r");
    }
    const int orientation = nu > 0 ? +1 : -1;

    IntegrateOptions io;
    io.tol = opts.tol;
    io.store_dense = opts.keep_trajectory;
    EventSpec ev;
    ev.id = 0;
    ev.g = [sec](double, const StateVec& s) { return sec.cross(s[0], s[1]); };
    ev.direction = orientation;
    ev.terminal = true;
    ev.terminal_count = opts.winding;
    ev.accept = [sec](const StateVec& s) {
        const double a = sec.along(s[0], s[1]);
        return a > 0 && a <= sec.r_max * (1 + 1e-9);
    };
    io.events.push_back(ev);
    EventSpec leave;  // stop early once the orbit leaves the working disc
    leave.id = 1;
    const double rad2 = opts.domain_radius * opts.domain_radius;
    leave.g = [rad2](double, const StateVec& s) { return rad2 - s[0] * s[0] - s[1] * s[1]; };
    leave.direction = -1;
    leave.terminal = true;
    io.events.push_back(leave);

    ReturnResult res;
    res.trajectory = integrate(vf, StateVec{x0, y0}, 0.0, opts.max_time, io);
    const Trajectory& tr = res.trajectory;

    if (tr.outcome == FlowOutcome::BlowUp) {
        res.status = ReturnStatus::BlowUp;
    } else if (tr.outcome == FlowOutcome::Pole) {
        res.status = ReturnStatus::LeftDomain;
    } else if (tr.outcome == FlowOutcome::EventStop) {
        if (!tr.events.empty() && tr.events.back().id == 1) {
            res.status = ReturnStatus::LeftDomain;
        } else {
            const double a = sec.along(tr.x_final[0], tr.x_final[1]);
            if (a < sec.r_min || a > sec.r_max) {
                res.status = ReturnStatus::LeftDomain;
            } else {
                res.status = ReturnStatus::Ok;
                res.sample = {r, a, tr.t_final, opts.winding};
            }
        }
    } else {
        res.status = ReturnStatus::NoReturn;
    }
    return res;
}

struct TransitResult {
    ReturnStatus status = ReturnStatus::NoReturn;
    double r_to = 0;   // arrival coordinate on the target section
    double time = 0;   // transit time, > 0
    StateVec state;    // arrival state
};

// Time and arrival coordinate of the orbit from sec_from.point(r) to its
// first crossing of sec_to (any orientation, on the ray side).
inline TransitResult section_transit(const VectorField2& vf, const Section& sec_from,
                                     const Section& sec_to, double r,
                                     const ReturnOptions& opts = {}) {
    double x0, y0;
    sec_from.point(r, x0, y0);

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

    TransitResult res;
    Trajectory tr = integrate(vf, StateVec{x0, y0}, 0.0, opts.max_time, io);
    if (tr.outcome == FlowOutcome::EventStop) {
        res.status = ReturnStatus::Ok;
        res.r_to = sec_to.along(tr.x_final[0], tr.x_final[1]);
        res.time = tr.t_final;
        res.state = tr.x_final;
    } else if (tr.outcome == FlowOutcome::BlowUp) {
        res.status = ReturnStatus::BlowUp;
    } else {
        res.status = ReturnStatus::NoReturn;
    }
    return res;
}

}  // namespace planarlab
