#pragma once

// Certified strict-sign verdicts over a box via interval evaluation with
// adaptive bisection (widest dimension first). A refutation is always backed
// by an exact rational point evaluation, never by interval arithmetic alone.

#include "planarlab/interval/eval.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace planarlab {

enum class SignStatus { StrictlyPositive, StrictlyNegative, Unknown };

inline const char* to_string(SignStatus s) {
    switch (s) {
        case SignStatus::StrictlyPositive: return "StrictlyPositive";
        case SignStatus::StrictlyNegative: return "StrictlyNegative";
        default: return "Unknown";
    }
}

struct SignReport {
    SignStatus status = SignStatus::Unknown;
    std::vector<double> witness;   // point with the opposite (or zero) sign, if one was found
    std::vector<Box> undecided;    // boxes left open at max depth / budget
    long boxes_checked = 0;
    int depth_reached = 0;
};

namespace detail {

enum class SignTarget { Positive, Negative };

struct SignProof {
    bool certified = false;
    bool refuted = false;          // exact counterexample found
    std::vector<double> witness;
    std::vector<Box> undecided;
    long boxes_checked = 0;
    int depth_reached = 0;
};

// Prove f has the target strict sign everywhere on `box`.
inline SignProof prove_sign(const RatPoly& p, const Box& box, SignTarget target,
                            int max_depth = 40, long box_budget = 400000) {
    SignProof proof;
    struct Item {
        Box b;
        int depth;
    };
    std::vector<Item> work{{box, 0}};
    const bool want_positive = target == SignTarget::Positive;
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        ++proof.boxes_checked;
        proof.depth_reached = std::max(proof.depth_reached, it.depth);
        if (proof.boxes_checked > box_budget) {
            proof.undecided.push_back(it.b);
            continue;
        }
        Interval v = eval_box(p, it.b);
        if ((want_positive && v.lo > 0) || (!want_positive && v.hi < 0)) continue;
        // Exact check at the midpoint: a genuine violation refutes globally.
        std::vector<double> mid = it.b.midpoint();
        std::vector<Rational> midq(mid.begin(), mid.end());
        Rational exact = p.eval_exact(midq);
        if ((want_positive && exact <= 0) || (!want_positive && exact >= 0)) {
            proof.refuted = true;
            proof.witness = mid;
            return proof;
        }
        if (it.depth >= max_depth || it.b.max_width() <= 0) {
            proof.undecided.push_back(it.b);
            continue;
        }
        auto [a, b2] = it.b.bisect();
        work.push_back({std::move(a), it.depth + 1});
        work.push_back({std::move(b2), it.depth + 1});
    }
    proof.certified = proof.undecided.empty();
    return proof;
}

}  // namespace detail

// Decide the strict sign of p over `box`. The candidate sign comes from an
// exact rational evaluation at the midpoint; the verdict is then proven by
// subdivision. Unknown is the honest fallback (sign change, a zero, or depth
// exhausted).
inline SignReport certify_sign(const RatPoly& p, const Box& box, int max_depth = 40,
                               long box_budget = 400000) {
    SignReport report;
    std::vector<double> mid = box.midpoint();
    std::vector<Rational> midq(mid.begin(), mid.end());
    Rational probe = p.eval_exact(midq);
    if (probe == 0) {
        report.witness = mid;
        return report;
    }
    auto target = probe > 0 ? detail::SignTarget::Positive : detail::SignTarget::Negative;
    detail::SignProof proof = detail::prove_sign(p, box, target, max_depth, box_budget);
    report.boxes_checked = proof.boxes_checked;
    report.depth_reached = proof.depth_reached;
    report.witness = proof.witness;
    report.undecided = proof.undecided;
    if (proof.certified)
        report.status = probe > 0 ? SignStatus::StrictlyPositive : SignStatus::StrictlyNegative;
    return report;
}

// Strict sign of a rational function: certify num and den separately, then
// combine. Certifying den also proves the denominator never vanishes on the
// box.
inline SignReport certify_sign(const RatFn& f, const Box& box, int max_depth = 40,
                               long box_budget = 400000) {
    SignReport den = certify_sign(f.den(), box, max_depth, box_budget);
    if (den.status == SignStatus::Unknown) return den;
    SignReport num = certify_sign(f.num(), box, max_depth, box_budget);
    if (num.status == SignStatus::Unknown) return num;
    SignReport out = num;
    out.boxes_checked += den.boxes_checked;
    out.depth_reached = std::max(out.depth_reached, den.depth_reached);
    out.status = (num.status == den.status) ? SignStatus::StrictlyPositive
                                            : SignStatus::StrictlyNegative;
    return out;
}

}  // namespace planarlab
