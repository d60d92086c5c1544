#pragma once

// JSON reports for certification runs. Box endpoints are emitted as decimal
// double round-trips (shortest representation that parses back exactly).

#include "planarlab/algebra/json.hpp"
#include "planarlab/interval/census.hpp"

#include <cstdio>
#include <string>

namespace planarlab {

inline std::string double_repr(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline Json to_json(const Interval& iv) {
    return Json{{"lo", double_repr(iv.lo)}, {"hi", double_repr(iv.hi)}};
}

inline Json to_json(const Box& b) {
    Json dims = Json::array();
    for (auto& d : b.dims) dims.push_back(to_json(d));
    return dims;
}

inline Json to_json(const MirandaResult& m) {
    return Json{{"certified", m.certified},
                {"permutation", m.permutation},
                {"flips", m.flips},
                {"face_depth", m.face_depth_used},
                {"boxes_checked", m.boxes_checked}};
}

inline Json to_json(const CensusResult& c) {
    Json boxes = Json::array();
    for (auto& r : c.roots) {
        Json root = Json::array();
        for (double x : r.root) root.push_back(double_repr(x));
        boxes.push_back(Json{{"status", "certified"},
                             {"box", to_json(r.box)},
                             {"unique_in", to_json(r.unique_in)},
                             {"root", std::move(root)},
                             {"sign_assignment", to_json(r.miranda)}});
    }
    for (auto& u : c.unresolved)
        boxes.push_back(Json{{"status", "unresolved"}, {"box", to_json(u)}});
    return Json{{"count", c.roots.size()},
                {"boxes", std::move(boxes)},
                {"boxes_processed", c.boxes_processed}};
}

}  // namespace planarlab
