#pragma once

// Index of a planar vector field along a circle: accumulated argument of
// (P, Q) with adaptive angular refinement until every increment is below
// pi/2, which pins the winding branch unambiguously.

#include <cmath>
#include <list>
#include <numbers>
#include <stdexcept>

#include "planarlab/flow/field.hpp"

namespace planarlab {

// Winding number of (P, Q) around the circle of given center and radius.
// Throws std::domain_error if the field vanishes (numerically) on the circle.
inline int field_index(const VectorField2& vf, double cx, double cy, double radius,
                       int initial_samples = 64) {
    if (radius <= 0) throw std::invalid_argument("field_index: radius must be positive");
    struct Node {
        double theta;
        double px, qy;  // field value at the sample
    };
    auto eval = [&](double theta) -> Node {
        const double x = cx + radius * std::cos(theta);
        const double y = cy + radius * std::sin(theta);
        Node nd{theta, 0, 0};
        vf.eval(x, y, nd.px, nd.qy);
        return nd;
    };

    // Magnitude floor: relative to the largest field value seen on the circle.
    std::list<Node> nodes;
    const double two_pi = 2 * std::numbers::pi;
    for (int i = 0; i <= initial_samples; ++i) nodes.push_back(eval(two_pi * i / initial_samples));
    double scale = 0;
    for (auto& nd : nodes) scale = std::max(scale, std::hypot(nd.px, nd.qy));
    const double floor_mag = 1e-12 * std::max(scale, 1e-300);

    double total = 0;
    auto it = nodes.begin();
    auto next = std::next(it);
    int depth_guard = 0;
    while (next != nodes.end()) {
        const Node& a = *it;
        const Node& b = *next;
        if (std::hypot(a.px, a.qy) < floor_mag || std::hypot(b.px, b.qy) < floor_mag) {
            throw std::domain_error("field_index: field vanishes on the circle; change the radius");
        }
        double d = std::atan2(b.qy, b.px) - std::atan2(a.qy, a.px);
        while (d > std::numbers::pi) d -= two_pi;
        while (d < -std::numbers::pi) d += two_pi;
        if (std::fabs(d) >= std::numbers::pi / 2) {
            if (++depth_guard > 1'000'000) {
                throw std::domain_error("field_index: refinement did not converge; change the radius");
            }
            nodes.insert(next, eval(0.5 * (a.theta + b.theta)));
            next = std::next(it);
            continue;
        }
        total += d;
        it = next;
        ++next;
    }
    return static_cast<int>(std::lround(total / two_pi));
}

}  // namespace planarlab
