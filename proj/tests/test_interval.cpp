#include "planarlab/core/rng.hpp"
#include "planarlab/interval/census.hpp"
#include "planarlab/interval/report.hpp"
#include "planarlab/systems/builtins.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace planarlab;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> X{"x"};

RatPoly px() { return RatPoly::variable(XY, 0); }
RatPoly py() { return RatPoly::variable(XY, 1); }
RatPoly ux() { return RatPoly::variable(X, 0); }

}  // namespace

TEST_CASE("directed rounding keeps exact results inside", "[interval]") {
    CounterRng rng(101, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        auto draw = [&]() {
            std::int64_t n = static_cast<std::int64_t>(rng.next_u64() % 2000001) - 1000000;
            std::int64_t d = 1 + static_cast<std::int64_t>(rng.next_u64() % 999);
            return Rational(n, d);
        };
        Rational a = draw(), b = draw();
        Interval ia(to_double(a)), ib(to_double(b));
        // The float seed may not equal the rational exactly; compare against
        // the rationals the endpoints actually represent.
        Rational alo(ia.lo), bhi(ib.hi);
        Interval sum = ia + ib, prod = ia * ib, diff = ia - ib;
        Rational ra(ia.lo), rb(ib.lo);
        CHECK(Rational(sum.lo) <= ra + rb);
        CHECK(ra + rb <= Rational(sum.hi));
        CHECK(Rational(diff.lo) <= ra - rb);
        CHECK(ra - rb <= Rational(diff.hi));
        CHECK(Rational(prod.lo) <= ra * rb);
        CHECK(ra * rb <= Rational(prod.hi));
        if (rb != 0) {
            Interval quot = ia / ib;
            CHECK(Rational(quot.lo) <= ra / rb);
            CHECK(ra / rb <= Rational(quot.hi));
        }
    }
}

TEST_CASE("interval extension of polynomials", "[interval]") {
    Box b({Interval(1, 2), Interval(3, 4)});
    Interval s = eval_box(px() + py(), b);
    CHECK(s.lo == Catch::Approx(4).margin(1e-12));
    CHECK(s.hi == Catch::Approx(6).margin(1e-12));

    // Dependency between occurrences is not tracked. x - x cancels exactly in
    // the polynomial ring (the canonical form is zero), so the effect shows at
    // the raw interval level and in x - x^2 on [0,1]: Horner evaluates it as
    // (1 - x)*x, enclosure [0,1], while the true range is [0, 1/4].
    Interval xi(0, 1);
    Interval raw = xi - xi;
    CHECK(raw.lo == Catch::Approx(-1).margin(1e-12));
    CHECK(raw.hi == Catch::Approx(1).margin(1e-12));
    Box u({Interval(0, 1)});
    CHECK((ux() - ux()).is_zero());
    Interval z = eval_box(ux() - ux(), u);
    CHECK(z.lo == 0.0);
    CHECK(z.hi == 0.0);
    Interval d = eval_box(ux() - ux() * ux(), u);
    CHECK(d.lo == Catch::Approx(0).margin(1e-12));
    CHECK(d.hi == Catch::Approx(1).margin(1e-12));
    CHECK(d.hi > 0.3);  // strictly wider than the true maximum 1/4

    Box sq({Interval(0, 1), Interval(0, 1)});
    Interval v = eval_box(px() * px() + py() * py(), sq);
    CHECK(v.lo == Catch::Approx(0).margin(1e-12));
    CHECK(v.hi == Catch::Approx(2).margin(1e-12));

    // Even powers stay sharp under the interval pow overload.
    Interval e = pow_value(Interval(-1, 1), 2);
    CHECK(e.lo == 0.0);
    CHECK(e.hi == Catch::Approx(1).margin(1e-12));
}

TEST_CASE("containment of point evaluations in box enclosures", "[interval]") {
    CounterRng rng(77, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        RatPoly p = RatPoly::constant(XY, Rational(0));
        for (int t = 0; t < 5; ++t) {
            int num = static_cast<int>(rng.next_u64() % 21) - 10;
            Exponents e{static_cast<std::uint32_t>(rng.next_u64() % 4),
                        static_cast<std::uint32_t>(rng.next_u64() % 4)};
            p = p + RatPoly::monomial(XY, e, Rational(num));
        }
        double cx = 4 * rng.next_uniform() - 2, cy = 4 * rng.next_uniform() - 2;
        double wx = rng.next_uniform(), wy = rng.next_uniform();
        Box b({Interval(cx - wx, cx + wx), Interval(cy - wy, cy + wy)});
        double tx = cx + wx * (2 * rng.next_uniform() - 1);
        double ty = cy + wy * (2 * rng.next_uniform() - 1);
        Interval enc = eval_box(p, b);
        double val = eval_double(p, {tx, ty});
        CHECK(enc.lo <= val + 1e-9);
        CHECK(val - 1e-9 <= enc.hi);
        // The exact rational value must lie inside the enclosure outright.
        Rational exact = p.eval_exact({Rational(tx), Rational(ty)});
        CHECK(Rational(enc.lo) <= exact);
        CHECK(exact <= Rational(enc.hi));
    }
}

TEST_CASE("strict sign certification over boxes", "[interval]") {
    // 10x^4 - 10x^2 + 3 has negative discriminant in x^2: always positive.
    RatPoly quartic = Rational(10) * ux().pow(4) - Rational(10) * ux().pow(2) +
                      RatPoly::constant(X, Rational(3));
    SignReport rep = certify_sign(quartic, Box({Interval(-5, 5)}));
    CHECK(rep.status == SignStatus::StrictlyPositive);

    CHECK(certify_sign(ux(), Box({Interval(-1, 1)})).status == SignStatus::Unknown);
    CHECK(certify_sign(ux() * ux() + RatPoly::constant(X, Rational(1)),
                       Box({Interval(-10, 10)}))
              .status == SignStatus::StrictlyPositive);
    CHECK(certify_sign(-(ux() * ux()) - RatPoly::constant(X, Rational(1)),
                       Box({Interval(-10, 10)}))
              .status == SignStatus::StrictlyNegative);

    // Rational function: -4x^4 / (1+x^2)^2 away from the vanishing point.
    RatFn f{Rational(-4) * ux().pow(4),
            (RatPoly::constant(X, Rational(1)) + ux() * ux()).pow(2)};
    CHECK(certify_sign(f, Box({Interval(1, 2)})).status == SignStatus::StrictlyNegative);
}

TEST_CASE("opposite-face sign certificates", "[interval]") {
    std::vector<RatPoly> identity{px(), py()};
    Box b({Interval(-1, 1), Interval(-1, 1)});
    MirandaResult pm = poincare_miranda(identity, b);
    CHECK(pm.certified);

    std::vector<RatPoly> off{px() * px() + RatPoly::constant(XY, Rational(1)), py()};
    CHECK_FALSE(poincare_miranda(off, b).certified);
}

TEST_CASE("face certificates for the trinomial pair boxes", "[interval]") {
    auto sys = builtins::kou_system();
    auto iv = builtins::kou_intervals();
    MirandaResult pm15 = poincare_miranda(sys, Box({iv[0], iv[4]}));
    CHECK(pm15.certified);
    MirandaResult pm24 = poincare_miranda(sys, Box({iv[1], iv[3]}));
    CHECK(pm24.certified);

    // Newton from the certified box centre converges inside the box.
    KrawczykOperator op(sys);
    std::vector<double> x = Box({iv[0], iv[4]}).midpoint();
    REQUIRE(op.newton_polish(x));
    CHECK(Box({iv[0], iv[4]}).contains(x));
    auto roots = builtins::kou_roots();
    CHECK(x[0] == Catch::Approx(roots[0]).margin(1e-7));
    CHECK(x[1] == Catch::Approx(roots[4]).margin(1e-7));
}

TEST_CASE("uniqueness certificates", "[interval]") {
    // One-dimensional: x - 1/2 on [0, 1].
    std::vector<RatPoly> lin{ux() - RatPoly::constant(X, Rational(1, 2))};
    KrawczykResult kr = krawczyk_unique(lin, Box({Interval(0, 1)}));
    REQUIRE(kr.status == KrawczykStatus::UniqueRoot);
    CHECK(kr.refined.max_width() <= 1e-9);
    CHECK(kr.root[0] == Catch::Approx(0.5).margin(1e-12));

    // Degenerate double root stays inconclusive.
    std::vector<RatPoly> degen{px() * px(), py()};
    Box b({Interval(-1, 1), Interval(-1, 1)});
    CHECK(krawczyk_unique(degen, b, 1e-9, 10).status == KrawczykStatus::Unknown);

    // No real zeros at all.
    std::vector<RatPoly> none{px() * px() + py() * py() + RatPoly::constant(XY, Rational(1)),
                              px()};
    CHECK(krawczyk_unique(none, Box({Interval(0, 1), Interval(0, 1)})).status ==
          KrawczykStatus::NoRoot);
}

TEST_CASE("uniqueness on the near-tangent diagonal box", "[interval]") {
    auto sys = builtins::kou_system();
    auto iv = builtins::kou_intervals();
    KrawczykResult kr = krawczyk_unique(sys, Box({iv[2], iv[2]}));
    REQUIRE(kr.status == KrawczykStatus::UniqueRoot);
    CHECK(kr.root[0] == Catch::Approx(0.74035310).margin(1e-6));
    CHECK(kr.root[1] == Catch::Approx(0.74035310).margin(1e-6));
}

TEST_CASE("root census on simple systems", "[interval]") {
    std::vector<RatPoly> shifted{px() - RatPoly::constant(XY, Rational(1)),
                                 py() - RatPoly::constant(XY, Rational(1))};
    CensusOptions opts;
    opts.max_depth = 8;
    CensusResult res = census_positive(shifted, Box({Interval(0, 2), Interval(0, 2)}), opts);
    CHECK(res.roots.size() == 1);
    CHECK(res.unresolved.empty());
    CHECK(res.roots[0].root[0] == Catch::Approx(1).margin(1e-9));

    std::vector<RatPoly> none{px() * px() + py() * py() + RatPoly::constant(XY, Rational(1)),
                              px()};
    CensusResult empty = census_positive(none, Box({Interval(0, 1), Interval(0, 1)}), opts);
    CHECK(empty.roots.empty());
    CHECK(empty.unresolved.empty());

    std::vector<RatPoly> circle{px() * px() + py() * py() - RatPoly::constant(XY, Rational(1)),
                                px() - py()};
    CensusResult one = census_positive(circle, Box({Interval(0.01, 2), Interval(0.01, 2)}), opts);
    REQUIRE(one.roots.size() == 1);
    CHECK(one.roots[0].root[0] == Catch::Approx(std::sqrt(0.5)).margin(1e-9));
}

TEST_CASE("census count grows monotonically with depth", "[interval][census]") {
    auto sys = builtins::kou_system();
    Box quadrant({Interval(0.01, 2), Interval(0.01, 2)});
    CensusOptions shallow;
    shallow.max_depth = 11;
    CensusOptions deep;
    deep.max_depth = 14;
    CensusResult a = census_positive(sys, quadrant, shallow);
    CensusResult b = census_positive(sys, quadrant, deep);
    CHECK(a.roots.size() <= b.roots.size());
    CHECK(b.roots.size() == 5);

    auto roots = builtins::kou_roots();
    std::vector<std::pair<double, double>> expect;
    for (int i = 0; i < 5; ++i) expect.push_back({roots[i], roots[4 - i]});
    REQUIRE(b.roots.size() == expect.size());
    std::vector<bool> used(expect.size(), false);
    for (auto& r : b.roots) {
        bool matched = false;
        for (std::size_t i = 0; i < expect.size(); ++i) {
            if (used[i]) continue;
            if (std::abs(r.root[0] - expect[i].first) < 1e-6 &&
                std::abs(r.root[1] - expect[i].second) < 1e-6) {
                used[i] = matched = true;
                break;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("census report serializes", "[interval]") {
    std::vector<RatPoly> shifted{px() - RatPoly::constant(XY, Rational(1)),
                                 py() - RatPoly::constant(XY, Rational(1))};
    CensusOptions opts;
    opts.max_depth = 6;
    CensusResult res = census_positive(shifted, Box({Interval(0, 2), Interval(0, 2)}), opts);
    Json j = to_json(res);
    CHECK(j["count"] == 1);
    CHECK(j["boxes"].size() == 1);
    CHECK(j["boxes"][0]["status"] == "certified");
}
