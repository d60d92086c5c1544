#pragma once

// Certified root census on a box. Level-order subdivision (every dimension
// halved per level, so depth d means leaf widths shrink by 2^d); a leaf is
// discarded when a component range excludes zero or the Krawczyk operator
// proves it root-free, and accepted when Krawczyk certifies a unique root
// AND a Poincare-Miranda certificate holds on the same candidate box. For
// the Miranda step the system is preconditioned by the inverse midpoint
// Jacobian; the preconditioner is converted to exact rationals and its
// determinant checked nonzero, so the zero set is provably unchanged.
//
// Each accepted candidate contributes a "unique-in" region with exactly one
// root inside the tight enclosure; later leaves wholly inside such a region
// but missing its enclosure are root-free and pruned. Certificates are
// merged by proximity/overlap. The certified count is a lower bound on the
// number of roots, monotone non-decreasing in depth.

#include "planarlab/interval/krawczyk.hpp"
#include "planarlab/interval/miranda.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace planarlab {

struct CensusOptions {
    int max_depth = 14;            // per-dimension halvings
    double krawczyk_width = 1e-9;  // target enclosure width
    int pm_face_depth = 22;
    double merge_tol = 1e-7;
    bool require_miranda = true;   // also demand the (preconditioned) PM certificate
    long box_budget = 2000000;
};

struct CertifiedRoot {
    Box box;                   // tight enclosure of the root
    Box unique_in;             // candidate box proven to contain exactly this root
    std::vector<double> root;  // Newton-polished representative
    MirandaResult miranda;
};

struct CensusResult {
    std::vector<CertifiedRoot> roots;
    std::vector<Box> unresolved;
    long boxes_processed = 0;
};

namespace detail {

// Exact determinant of a rational matrix (n <= 3).
inline Rational rational_det(const std::vector<Rational>& m, std::size_t n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Precondition fs by the floating inverse of the Jacobian at `point`, taken
// exactly as rationals. Returns false if the preconditioner is singular.
inline bool preconditioned_system(const KrawczykOperator& op, const std::vector<double>& point,
                                  std::vector<RatPoly>& out) {
    const auto& fs = op.system();
    const std::size_t n = fs.size();
    std::vector<double> jac(n * n), y;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) jac[i * n + j] = eval_double(fs[i].derivative(j), point);
    if (!invert_dense(jac, n, y)) return false;
    std::vector<Rational> yq(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        if (!std::isfinite(y[i])) return false;
        yq[i] = Rational(y[i]);
    }
    if (rational_det(yq, n) == 0) return false;
    out.clear();
    for (std::size_t i = 0; i < n; ++i) {
        RatPoly g = RatPoly::constant(fs[0].vars(), Rational(0));
        for (std::size_t j = 0; j < n; ++j) g = g + yq[i * n + j] * fs[j];
        out.push_back(std::move(g));
    }
    return true;
}

inline bool certify_candidate(const KrawczykOperator& op, const Box& cand,
                              const CensusOptions& opts, CertifiedRoot& out) {
    KrawczykResult kr = op.test(cand, opts.krawczyk_width);
    if (kr.status != KrawczykStatus::UniqueRoot) return false;
    if (opts.require_miranda) {
        std::vector<RatPoly> pre;
        if (!preconditioned_system(op, kr.root, pre)) return false;
        MirandaResult pm = poincare_miranda(pre, cand, opts.pm_face_depth);
        if (!pm.certified) return false;
        out.miranda = pm;
    }
    out.box = kr.refined;
    out.unique_in = cand;
    out.root = kr.root;
    return true;
}

inline void split_all_dims(const Box& b, std::vector<Box>& out) {
    out.assign(1, b);
    for (std::size_t d = 0; d < b.size(); ++d) {
        std::vector<Box> next;
        next.reserve(out.size() * 2);
        for (const Box& piece : out) {
            double m = piece[d].mid();
            if (!(m > piece[d].lo && m < piece[d].hi)) {
                next.push_back(piece);
                continue;
            }
            Box lo = piece, hi = piece;
            lo[d] = Interval(piece[d].lo, m);
            hi[d] = Interval(m, piece[d].hi);
            next.push_back(std::move(lo));
            next.push_back(std::move(hi));
        }
        out = std::move(next);
    }
}

}  // namespace detail

inline CensusResult census_positive(const std::vector<RatPoly>& fs, const Box& search,
                                    const CensusOptions& opts = {}) {
    CensusResult res;
    KrawczykOperator op(fs);
    struct Item {
        Box b;
        int depth;
    };
    std::deque<Item> work{{search, 0}};  // level order, so certificates prune siblings' children
    while (!work.empty()) {
        Item it = std::move(work.front());
        work.pop_front();
        ++res.boxes_processed;
        if (res.boxes_processed > opts.box_budget) {
            res.unresolved.push_back(it.b);
            continue;
        }
        bool empty = false;
        for (std::size_t i = 0; i < fs.size() && !empty; ++i)
            if (!op.component_range(i, it.b).contains_zero()) empty = true;
        if (empty) continue;
        // Inside a certified unique-root region but off its enclosure: root-free.
        bool pruned = false;
        for (const auto& r : res.roots)
            if (r.unique_in.contains_box(it.b) && !it.b.intersects(r.box)) {
                pruned = true;
                break;
            }
        if (pruned) continue;

        KrawczykResult kr = op.test(it.b, opts.krawczyk_width);
        if (kr.status == KrawczykStatus::NoRoot) continue;
        CertifiedRoot cr;
        if (kr.status == KrawczykStatus::UniqueRoot) {
            if (opts.require_miranda) {
                if (detail::certify_candidate(op, it.b, opts, cr)) {
                    res.roots.push_back(std::move(cr));
                    continue;
                }
            } else {
                cr.box = kr.refined;
                cr.unique_in = it.b;
                cr.root = kr.root;
                res.roots.push_back(std::move(cr));
                continue;
            }
        }
        // Recentred attempt: same-size box around the Newton-polished
        // candidate, provided the candidate stays in the leaf and the box in
        // the search region.
        std::vector<double> x = it.b.midpoint();
        if (op.newton_polish(x) && it.b.contains(x)) {
            Box cand = it.b;
            bool inside = true;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                double hw = 0.5 * it.b[i].width();
                cand[i] = {x[i] - hw, x[i] + hw};
                if (cand[i].lo < search[i].lo || cand[i].hi > search[i].hi) inside = false;
            }
            if (inside && detail::certify_candidate(op, cand, opts, cr)) {
                res.roots.push_back(std::move(cr));
                continue;
            }
        }
        if (it.depth >= opts.max_depth) {
            res.unresolved.push_back(it.b);
            continue;
        }
        std::vector<Box> children;
        detail::split_all_dims(it.b, children);
        for (auto& c : children) work.push_back({std::move(c), it.depth + 1});
    }

    // Merge certificates pointing at the same root.
    std::sort(res.roots.begin(), res.roots.end(),
              [](const CertifiedRoot& a, const CertifiedRoot& b) { return a.root < b.root; });
    std::vector<CertifiedRoot> merged;
    for (auto& r : res.roots) {
        bool dup = false;
        for (auto& m : merged) {
            double d2 = 0;
            for (std::size_t i = 0; i < r.root.size(); ++i) {
                double d = r.root[i] - m.root[i];
                d2 += d * d;
            }
            if (std::sqrt(d2) < opts.merge_tol || r.box.intersects(m.box)) {
                dup = true;
                break;
            }
        }
        if (!dup) merged.push_back(r);
    }
    res.roots = std::move(merged);

    // Drop unresolved boxes that a certificate already accounts for.
    std::vector<Box> still;
    for (auto& u : res.unresolved) {
        bool covered = false;
        for (auto& r : res.roots)
            if (u.intersects(r.box) || (r.unique_in.contains_box(u) && !u.intersects(r.box)))
                covered = true;
        if (!covered) still.push_back(u);
    }
    res.unresolved = std::move(still);
    return res;
}

// Uniqueness decision for a single box: the direct operator test first, then
// a subdivision census (Krawczyk-only certificates) whose outcome is mapped
// back onto the whole box.
inline KrawczykResult krawczyk_unique(const std::vector<RatPoly>& fs, const Box& box,
                                      double refine_width = 1e-9, int fallback_depth = 16) {
    KrawczykOperator op(fs);
    KrawczykResult direct = op.test(box, refine_width);
    if (direct.status != KrawczykStatus::Unknown) return direct;
    CensusOptions opts;
    opts.max_depth = fallback_depth;
    opts.krawczyk_width = refine_width;
    opts.require_miranda = false;
    CensusResult census = census_positive(fs, box, opts);
    KrawczykResult out;
    if (!census.unresolved.empty()) return out;
    if (census.roots.empty()) {
        out.status = KrawczykStatus::NoRoot;
        return out;
    }
    if (census.roots.size() == 1) {
        out.status = KrawczykStatus::UniqueRoot;
        out.refined = census.roots.front().box;
        out.root = census.roots.front().root;
    }
    return out;
}

}  // namespace planarlab
