#pragma once

#include "planarlab/interval/interval.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace planarlab {

struct Box {
    std::vector<Interval> dims;

    Box() = default;
    explicit Box(std::vector<Interval> d) : dims(std::move(d)) {}

    std::size_t size() const { return dims.size(); }
    Interval& operator[](std::size_t i) { return dims[i]; }
    const Interval& operator[](std::size_t i) const { return dims[i]; }

    double max_width() const {
        double w = 0;
        for (auto& d : dims) w = std::max(w, d.width());
        return w;
    }
    std::size_t widest_dim() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < dims.size(); ++i)
            if (dims[i].width() > dims[best].width()) best = i;
        return best;
    }
    std::vector<double> midpoint() const {
        std::vector<double> m;
        m.reserve(dims.size());
        for (auto& d : dims) m.push_back(d.mid());
        return m;
    }
    bool contains(const std::vector<double>& p) const {
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (!dims[i].contains(p[i])) return false;
        return true;
    }
    bool strictly_inside(const Box& outer) const {
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (!dims[i].strictly_inside(outer.dims[i])) return false;
        return true;
    }
    bool intersects(const Box& o) const {
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (!dims[i].intersects(o.dims[i])) return false;
        return true;
    }
    bool contains_box(const Box& inner) const {
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (inner.dims[i].lo < dims[i].lo || inner.dims[i].hi > dims[i].hi) return false;
        return true;
    }

    // Splits along the widest dimension at its midpoint.
    std::pair<Box, Box> bisect() const {
        std::size_t d = widest_dim();
        Box a = *this, b = *this;
        double m = dims[d].mid();
        a.dims[d] = {dims[d].lo, m};
        b.dims[d] = {m, dims[d].hi};
        return {std::move(a), std::move(b)};
    }
};

}  // namespace planarlab
