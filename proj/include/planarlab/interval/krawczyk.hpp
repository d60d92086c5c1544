#pragma once

// Krawczyk uniqueness test. With m = mid(B), Y = J(m)^{-1} (floating inverse
// of the midpoint Jacobian) and [J] the interval Jacobian over B,
//   K(B) = m - Y f(m) + (I - Y [J]) (B - m).
// K(B) strictly inside B certifies exactly one zero in B; empty K(B) ∩ B
// certifies none. Iterating B <- K(B) ∩ B then contracts onto the root.

#include "planarlab/algebra/calculus.hpp"
#include "planarlab/interval/eval.hpp"

#include <optional>
#include <vector>

namespace planarlab {

enum class KrawczykStatus { UniqueRoot, NoRoot, Unknown };

struct KrawczykResult {
    KrawczykStatus status = KrawczykStatus::Unknown;
    Box refined;                 // tight enclosure when status == UniqueRoot
    std::vector<double> root;    // Newton-polished point
    int iterations = 0;
};

namespace detail {

inline bool invert_dense(std::vector<double> a, std::size_t n, std::vector<double>& inv) {
    inv.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0) return false;
        if (piv != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        double d = a[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col * n + c] /= d;
            inv[col * n + c] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r * n + col];
            if (f == 0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    return true;
}

}  // namespace detail

class KrawczykOperator {
  public:
    explicit KrawczykOperator(std::vector<RatPoly> fs) : fs_(std::move(fs)) {
        n_ = fs_.size();
        jac_.reserve(n_ * n_);
        for (auto& f : fs_)
            for (std::size_t v = 0; v < n_; ++v) jac_.push_back(f.derivative(v));
    }

    const std::vector<RatPoly>& system() const { return fs_; }
    std::size_t dim() const { return n_; }

    // Newton iteration from `x` using the exact Jacobian in doubles.
    bool newton_polish(std::vector<double>& x, int iters = 60, double tol = 1e-14) const {
        for (int it = 0; it < iters; ++it) {
            std::vector<double> fv(n_), j(n_ * n_), inv;
            for (std::size_t i = 0; i < n_; ++i) fv[i] = eval_double(fs_[i], x);
            for (std::size_t i = 0; i < n_ * n_; ++i) j[i] = eval_double(jac_[i], x);
            if (!detail::invert_dense(j, n_, inv)) return false;
            double step = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                double dx = 0;
                for (std::size_t k = 0; k < n_; ++k) dx += inv[i * n_ + k] * fv[k];
                if (!std::isfinite(dx)) return false;
                x[i] -= dx;
                if (std::abs(x[i]) > 1e12) return false;
                step = std::max(step, std::abs(dx));
            }
            if (step < tol) return true;
        }
        return false;
    }

    // Contraction loop. Every zero of `box` lies in K(box), so replacing the
    // box by K ∩ box preserves the zero set; if at any stage K(cur) lands
    // strictly inside cur, the original box contains exactly one zero.
    KrawczykResult test(const Box& box, double refine_width = 1e-9, int max_refine = 80) const {
        KrawczykResult out;
        Box cur = box;
        for (int iter = 0; iter < max_refine; ++iter) {
            ++out.iterations;
            Box k = apply(cur);
            if (!k.intersects(cur)) {
                if (out.status != KrawczykStatus::UniqueRoot) out.status = KrawczykStatus::NoRoot;
                return out;
            }
            if (out.status != KrawczykStatus::UniqueRoot && k.strictly_inside(cur))
                out.status = KrawczykStatus::UniqueRoot;
            Box next(cur);
            bool shrunk = false;
            for (std::size_t i = 0; i < n_; ++i) {
                Interval meet;
                if (!try_intersect(k[i], cur[i], meet)) {
                    next = cur;
                    shrunk = false;
                    break;
                }
                if (meet.width() < cur[i].width()) shrunk = true;
                next[i] = meet;
            }
            cur = next;
            if (out.status == KrawczykStatus::UniqueRoot && cur.max_width() <= refine_width) break;
            if (!shrunk) break;
        }
        if (out.status != KrawczykStatus::UniqueRoot) return out;
        out.refined = cur;
        out.root = cur.midpoint();
        newton_polish(out.root);
        // Keep the polished point inside the certified enclosure.
        for (std::size_t i = 0; i < n_; ++i)
            out.root[i] = std::min(std::max(out.root[i], cur[i].lo), cur[i].hi);
        return out;
    }

    // Interval range of component i over a box.
    Interval component_range(std::size_t i, const Box& box) const { return eval_box(fs_[i], box); }

  private:
    Box apply(const Box& box) const {
        std::vector<double> m = box.midpoint();
        // Rigorous enclosure of f(m): evaluate on the degenerate point box.
        Box pointbox(std::vector<Interval>(m.begin(), m.end()));
        std::vector<Interval> fm(n_);
        for (std::size_t i = 0; i < n_; ++i) fm[i] = eval_box(fs_[i], pointbox);
        // Interval Jacobian over the box and floating midpoint Jacobian.
        std::vector<Interval> jbox(n_ * n_);
        std::vector<double> jmid(n_ * n_), y;
        for (std::size_t i = 0; i < n_ * n_; ++i) {
            jbox[i] = eval_box(jac_[i], box);
            jmid[i] = jbox[i].mid();
        }
        if (!detail::invert_dense(jmid, n_, y)) {
            // Singular midpoint Jacobian: return something non-contracting.
            return box;
        }
        Box k(std::vector<Interval>(n_, Interval(0.0)));
        for (std::size_t i = 0; i < n_; ++i) {
            Interval acc(m[i]);
            for (std::size_t c = 0; c < n_; ++c) acc = acc - Interval(y[i * n_ + c]) * fm[c];
            for (std::size_t c = 0; c < n_; ++c) {
                Interval coeff = (i == c) ? Interval(1.0) : Interval(0.0);
                for (std::size_t t = 0; t < n_; ++t)
                    coeff = coeff - Interval(y[i * n_ + t]) * jbox[t * n_ + c];
                acc = acc + coeff * (box[c] - Interval(m[c]));
            }
            k[i] = acc;
        }
        return k;
    }

    std::vector<RatPoly> fs_;
    std::vector<RatPoly> jac_;
    std::size_t n_ = 0;
};

// Single-shot operator test; the full uniqueness decision with subdivision
// fallback lives in census.hpp (krawczyk_unique).
inline KrawczykResult krawczyk_test(const std::vector<RatPoly>& fs, const Box& box,
                                    double refine_width = 1e-9) {
    return KrawczykOperator(fs).test(box, refine_width);
}

}  // namespace planarlab
