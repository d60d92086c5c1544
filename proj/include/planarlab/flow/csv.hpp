#pragma once

// CSV export of trajectories: t, state columns, event flag. Event rows are
// interleaved at their located times so the flag column marks exact
// crossings rather than nearby step endpoints.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "planarlab/flow/integrate.hpp"

namespace planarlab {

namespace detail {
inline std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

inline void write_csv(std::ostream& os, const Trajectory& traj) {
    static const char* kCols[] = {"x", "y", "z", "w", "u", "v", "s", "r"};
    os << "t";
    for (int i = 0; i < traj.dim; ++i) os << "," << kCols[i];
    os << ",event\n";

    const double dir = (traj.times.size() > 1 && traj.times.back() < traj.times.front()) ? -1 : 1;
    std::size_t next_event = 0;
    auto emit = [&](double t, const StateVec& s, int flag) {
        os << detail::csv_num(t);
        for (int i = 0; i < traj.dim; ++i) os << "," << detail::csv_num(s[i]);
        os << "," << flag << "\n";
    };
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        while (next_event < traj.events.size() &&
               dir * traj.events[next_event].t < dir * traj.times[i]) {
            emit(traj.events[next_event].t, traj.events[next_event].state, 1);
            ++next_event;
        }
        // A step endpoint can itself be an event (terminal stop).
        bool is_event = next_event < traj.events.size() &&
                        traj.events[next_event].t == traj.times[i];
        if (is_event) ++next_event;
        emit(traj.times[i], traj.states[i], is_event ? 1 : 0);
    }
    while (next_event < traj.events.size()) {
        emit(traj.events[next_event].t, traj.events[next_event].state, 1);
        ++next_event;
    }
}

}  // namespace planarlab
