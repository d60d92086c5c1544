#pragma once

// Poincare-Miranda existence certificate on a box: after relabeling the
// components (permutation) and flipping signs, each f_i must be strictly
// negative on the face x_i = lo_i and strictly positive on x_i = hi_i.
// Strict certified face signs imply f != 0 on the whole boundary, which is
// enough for the theorem. All n! * 2^n assignments are searched (n <= 3).

#include "planarlab/interval/certify.hpp"

#include <algorithm>
#include <numeric>

namespace planarlab {

struct MirandaResult {
    bool certified = false;
    std::vector<int> permutation;  // component assigned to each dimension
    std::vector<int> flips;        // +1 / -1 per dimension
    int face_depth_used = 0;
    long boxes_checked = 0;
};

namespace detail {

// Certifies sign of f restricted to the face x_dim = value (exact rational
// substitution; the face keeps the full box in the other dimensions).
inline bool face_sign_ok(const RatPoly& f, const Box& box, std::size_t dim, double value,
                         SignTarget target, int max_depth, long& boxes) {
    RatPoly restricted = f.substitute(dim, Rational(value));
    Box face = box;
    face[dim] = Interval(value);
    auto proof = prove_sign(restricted, face, target, max_depth);
    boxes += proof.boxes_checked;
    return proof.certified;
}

}  // namespace detail

inline MirandaResult poincare_miranda(const std::vector<RatPoly>& fs, const Box& box,
                                      int face_depth = 24) {
    const std::size_t n = fs.size();
    if (box.size() != n) throw std::invalid_argument("poincare_miranda: box/system arity mismatch");
    if (n > 3) throw std::invalid_argument("poincare_miranda: assignment search limited to n <= 3");
    MirandaResult res;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                const RatPoly& f = fs[perm[i]];
                bool flip = (mask >> i) & 1u;
                using detail::SignTarget;
                SignTarget lo_target = flip ? SignTarget::Positive : SignTarget::Negative;
                SignTarget hi_target = flip ? SignTarget::Negative : SignTarget::Positive;
                ok = detail::face_sign_ok(f, box, i, box[i].lo, lo_target, face_depth, res.boxes_checked) &&
                     detail::face_sign_ok(f, box, i, box[i].hi, hi_target, face_depth, res.boxes_checked);
            }
            if (ok) {
                res.certified = true;
                res.permutation = perm;
                res.flips.assign(n, 1);
                for (std::size_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1u) res.flips[i] = -1;
                res.face_depth_used = face_depth;
                return res;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return res;
}

}  // namespace planarlab
