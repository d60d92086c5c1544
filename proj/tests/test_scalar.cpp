#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "planarlab/scalar/equation.hpp"
#include "planarlab/scalar/rigid.hpp"
#include "planarlab/scalar/singular.hpp"
#include "planarlab/scalar/trigpoly.hpp"

using namespace planarlab;

namespace {

PeriodicScalarEq eq_from_terms(std::vector<ScalarTerm> terms, double T = 2 * std::numbers::pi) {
    return make_scalar_eq(std::move(terms), T);
}

TrigPoly tp_const(const Rational& a) { return TrigPoly::constant(a); }

double cross_ratio(double a, double b, double c, double d) {
    return ((a - c) * (b - d)) / ((a - d) * (b - c));
}

}  // namespace

TEST_CASE("harmonic arithmetic is exact", "[scalar][trig]") {
    TrigPoly c1 = TrigPoly::cos_harmonic(1);
    TrigPoly s1 = TrigPoly::sin_harmonic(1);

    TrigPoly f = (tp_const(2) + c1) * (tp_const(2) + c1);  // (2 + cos)^2
    CHECK(f.const_coeff() == Rational(9, 2));
    CHECK(f.cos_coeff(1) == Rational(4));
    CHECK(f.cos_coeff(2) == Rational(1, 2));
    CHECK(f.sin_coeff(1) == 0);

    TrigPoly prod = c1 * s1;  // sin(2 tau)/2
    CHECK(prod.cos_coeff(2) == 0);
    CHECK(prod.sin_coeff(2) == Rational(1, 2));
    CHECK(prod.const_coeff() == 0);

    CHECK((c1 * c1).mean() == Rational(1, 2));
    CHECK(c1.derivative() == -s1);
    CHECK(s1.derivative() == c1);

    for (double tau : {0.3, 1.7, 4.1}) {
        CHECK(std::fabs(f.eval(tau) - std::pow(2 + std::cos(tau), 2)) < 1e-14);
    }
}

TEST_CASE("the half-angle image matches pointwise", "[scalar][trig]") {
    TrigPoly f = tp_const(Rational(1, 3)) + TrigPoly::cos_harmonic(1, Rational(2)) +
                 TrigPoly::sin_harmonic(2, Rational(-1, 2)) + TrigPoly::cos_harmonic(3, Rational(1, 7));
    QPoly p = f.half_angle_polynomial();
    const int K = f.max_harmonic();
    for (double tau : {-2.0, -0.4, 0.0, 0.9, 2.6}) {
        const double u = std::tan(tau / 2);
        const double denom = std::pow(1 + u * u, K);
        double pu = 0;
        for (std::size_t i = p.c.size(); i-- > 0;) pu = pu * u + to_double(p.c[i]);
        CHECK(std::fabs(pu / denom - f.eval(tau)) < 1e-12);
    }
}

TEST_CASE("sign changes over a period are decided exactly", "[scalar][trig]") {
    CHECK(TrigPoly::sin_harmonic(1).changes_sign());
    CHECK((TrigPoly::sin_harmonic(1) - tp_const(Rational(1, 10))).changes_sign());
    CHECK_FALSE(tp_const(-1).changes_sign());
    TrigPoly c1 = TrigPoly::cos_harmonic(1);
    CHECK_FALSE((c1 * c1).changes_sign());          // touches zero, no crossing
    CHECK((tp_const(1) + Rational(2) * c1).changes_sign());

    // Quadratic forms d cos^2 + e cos sin + f sin^2 change sign on the
    // circle exactly when e^2 - 4df > 0.
    auto quad_form = [&](int d, int e, int f) {
        TrigPoly s1 = TrigPoly::sin_harmonic(1);
        return Rational(d) * (c1 * c1) + Rational(e) * (c1 * s1) + Rational(f) * (s1 * s1);
    };
    CHECK_FALSE(quad_form(1, 0, 1).changes_sign());   // delta = -4
    CHECK(quad_form(1, 3, 1).changes_sign());         // delta = 5
    CHECK(quad_form(0, 1, 0).changes_sign());         // delta = 1
    CHECK_FALSE(quad_form(1, 2, 1).changes_sign());   // delta = 0, perfect square
    CHECK_FALSE(quad_form(-2, 1, -1).changes_sign()); // negative definite
}

TEST_CASE("trig-poly and equation JSON round trips", "[scalar][json]") {
    CHECK(parse_period("2*pi") == 2 * std::numbers::pi);
    CHECK(parse_period("pi") == std::numbers::pi);
    CHECK(std::fabs(parse_period("pi/2") - std::numbers::pi / 2) < 1e-15);
    CHECK(std::fabs(parse_period("3/2*pi") - 1.5 * std::numbers::pi) < 1e-15);
    CHECK(parse_period("2") == 2.0);
    CHECK_THROWS_AS(parse_period("0"), std::invalid_argument);

    TrigPoly f = tp_const(Rational(1, 2)) + TrigPoly::cos_harmonic(1, Rational(-3)) +
                 TrigPoly::sin_harmonic(2, Rational(5, 7));
    TrigPoly back = trigpoly_from_json(to_json(f));
    CHECK(back == f);

    Json j = Json::parse(R"({"harmonics":[{"k":0,"cos":"1/2"},{"k":1,"sin":-1}],"period":"2*pi"})");
    TrigPoly g = trigpoly_from_json(j);
    CHECK(g.const_coeff() == Rational(1, 2));
    CHECK(g.sin_coeff(1) == Rational(-1));

    PeriodicScalarEq eq = eq_from_terms(
        {{0, TrigPoly::sin_harmonic(1)}, {1, tp_const(-1)}});
    PeriodicScalarEq eq2 = scalar_eq_from_json(to_json(eq));
    REQUIRE(eq2.terms.size() == 2);
    CHECK(eq2.T == eq.T);
    CHECK(eq2.terms[0].coeff == eq.terms[0].coeff);
    CHECK(eq2.terms[1].coeff == eq.terms[1].coeff);

    Json bad = Json::parse(R"({"harmonics":[{"k":-1,"cos":"1"}]})");
    CHECK_THROWS_AS(trigpoly_from_json(bad), std::invalid_argument);
}

TEST_CASE("return-map iteration settles on the forced equilibrium", "[scalar][flow]") {
    // x' = -x + sin t has the unique periodic solution (sin t - cos t)/2.
    PeriodicScalarEq eq = eq_from_terms({{1, tp_const(-1)}, {0, TrigPoly::sin_harmonic(1)}});
    double rho = 0;
    for (int i = 0; i < 6; ++i) {
        ScalarFlowResult r = scalar_flow(eq, rho);
        REQUIRE_FALSE(r.blew_up);
        rho = r.value;
    }
    CHECK(std::fabs(rho + 0.5) < 1e-9);

    CountPeriodicResult cp = count_periodic(eq, {-2, 2}, {-2, -1, 0, 1, 2});
    REQUIRE(cp.fixed_points.size() == 1);
    CHECK(std::fabs(cp.fixed_points[0].rho + 0.5) < 1e-8);
    // The flow map is affine, so the finite difference is exact up to
    // integration error; cross-check the variational route.
    const double expected = std::exp(-2 * std::numbers::pi);
    CHECK(std::fabs(cp.fixed_points[0].multiplier - expected) < 1e-7);
    CHECK(std::fabs(scalar_multiplier(eq, 0.0).value - expected) < 1e-12);
    CHECK(cp.fixed_points[0].classification == CycleClass::HyperbolicStable);
}

TEST_CASE("escape in finite time is reported with its time", "[scalar][flow]") {
    PeriodicScalarEq eq = eq_from_terms({{2, tp_const(1)}}, 2.0);
    ScalarFlowResult r = scalar_flow(eq, 1.0);
    CHECK(r.blew_up);
    CHECK(std::fabs(r.t_star - 1.0) < 1e-3);

    ScalarFlowResult ok = scalar_flow(eq, -1.0);
    CHECK_FALSE(ok.blew_up);
}

TEST_CASE("odd forcing with odd cubic nonlinearity closes up", "[scalar][flow]") {
    // x' = cos(t) x^3 integrates to x^2 = 1/(x0^-2 - 2 sin t): every small
    // initial value is periodic.
    PeriodicScalarEq eq = eq_from_terms({{3, TrigPoly::cos_harmonic(1)}});
    ScalarFlowResult r = scalar_flow(eq, 0.1, 1e-12);
    REQUIRE_FALSE(r.blew_up);
    CHECK(std::fabs(r.value - 0.1) < 1e-9);

    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(-0.1 + 0.025 * i);
    CountPeriodicResult cp = count_periodic(eq, {-0.2, 0.2}, grid);
    CHECK(cp.continuum);
    CHECK(cp.fixed_points.empty());
}

TEST_CASE("autonomous Riccati has its two equilibria found", "[scalar][count]") {
    PeriodicScalarEq eq = eq_from_terms({{2, tp_const(1)}, {0, tp_const(-1)}});

    // Grid containing the equilibria exactly.
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(-1.5 + 0.25 * i);
    CountPeriodicResult cp = count_periodic(eq, {-1.5, 1.5}, grid);
    REQUIRE(cp.fixed_points.size() == 2);
    CHECK(std::fabs(cp.fixed_points[0].rho + 1.0) < 1e-8);
    CHECK(std::fabs(cp.fixed_points[1].rho - 1.0) < 1e-8);
    CHECK(cp.fixed_points[0].classification == CycleClass::HyperbolicStable);
    CHECK(std::fabs(cp.fixed_points[0].multiplier) < 0.1);
    // rho = 1 borders the escape set; classified unstable without a
    // trustworthy finite-difference value.
    CHECK(cp.fixed_points[1].classification == CycleClass::HyperbolicUnstable);
    CHECK_FALSE(cp.excluded.empty());

    // Grid that misses rho = 1: the escape-boundary probe must still find it.
    std::vector<double> grid2;
    for (int i = 0; i <= 10; ++i) grid2.push_back(-1.45 + 0.29 * i);
    CountPeriodicResult cp2 = count_periodic(eq, {-1.5, 1.5}, grid2);
    REQUIRE(cp2.fixed_points.size() == 2);
    CHECK(std::fabs(cp2.fixed_points[0].rho + 1.0) < 1e-6);
    CHECK(std::fabs(cp2.fixed_points[1].rho - 1.0) < 1e-6);

    CHECK_THROWS_AS(count_periodic(eq, {-1, 1}, std::vector<double>{-2, 0}),
                    std::invalid_argument);
}

TEST_CASE("multiplier routes agree on a cubic with three equilibria", "[scalar][count]") {
    PeriodicScalarEq eq = eq_from_terms({{1, tp_const(1)}, {3, tp_const(-1)}});
    std::vector<double> grid;
    for (int i = 0; i <= 14; ++i) grid.push_back(-1.4 + 0.2 * i);
    CountPeriodicResult cp = count_periodic(eq, {-1.5, 1.5}, grid);
    REQUIRE(cp.fixed_points.size() == 3);
    CHECK(std::fabs(cp.fixed_points[0].rho + 1.0) < 1e-8);
    CHECK(std::fabs(cp.fixed_points[1].rho) < 1e-8);
    CHECK(std::fabs(cp.fixed_points[2].rho - 1.0) < 1e-8);
    CHECK(cp.fixed_points[0].classification == CycleClass::HyperbolicStable);
    CHECK(cp.fixed_points[1].classification == CycleClass::HyperbolicUnstable);
    CHECK(cp.fixed_points[2].classification == CycleClass::HyperbolicStable);
    for (auto& fp : cp.fixed_points) {
        const double var = scalar_multiplier(eq, fp.rho).value;
        CHECK(std::fabs(fp.multiplier / var - 1) < 0.02);
    }
}

TEST_CASE("the one-period map of a Riccati equation preserves cross-ratios", "[scalar][property]") {
    std::mt19937 rng(20260814);
    std::uniform_real_distribution<double> U(-0.1, 0.1);
    auto rand_tp = [&] {
        return tp_const(Rational(U(rng))) + TrigPoly::cos_harmonic(1, Rational(U(rng))) +
               TrigPoly::sin_harmonic(1, Rational(U(rng)));
    };
    const double rho[4] = {-0.3, -0.1, 0.1, 0.3};
    int tested = 0;
    for (int inst = 0; inst < 6; ++inst) {
        PeriodicScalarEq eq = eq_from_terms({{0, rand_tp()}, {1, rand_tp()}, {2, rand_tp()}});
        double phi[4];
        bool good = true;
        for (int i = 0; i < 4; ++i) {
            ScalarFlowResult r = scalar_flow(eq, rho[i], 1e-12);
            if (r.blew_up) good = false;
            phi[i] = r.value;
        }
        if (!good) continue;
        ++tested;
        const double want = cross_ratio(rho[0], rho[1], rho[2], rho[3]);
        const double got = cross_ratio(phi[0], phi[1], phi[2], phi[3]);
        CHECK(std::fabs(got - want) < 1e-6 * std::max(1.0, std::fabs(want)));
    }
    CHECK(tested >= 5);
}

TEST_CASE("sign-definite leading coefficient keeps the count at three", "[scalar][property]") {
    std::mt19937 rng(77001);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(-3.0 + 0.3 * i);
    CountPeriodicOptions opts;
    opts.tol = 1e-8;
    opts.bisect_tol = 1e-8;
    for (int inst = 0; inst < 100; ++inst) {
        const double c0 = 0.3 + 0.35 * (U(rng) + 1);
        const double scale = 0.45 * c0;
        TrigPoly a3 = tp_const(Rational(c0)) + TrigPoly::cos_harmonic(1, Rational(scale * U(rng))) +
                      TrigPoly::sin_harmonic(1, Rational(scale * U(rng)));
        if (U(rng) < 0) a3 = -a3;
        auto rand_tp = [&] {
            return tp_const(Rational(U(rng))) + TrigPoly::cos_harmonic(1, Rational(U(rng))) +
                   TrigPoly::sin_harmonic(1, Rational(U(rng))) +
                   TrigPoly::cos_harmonic(2, Rational(U(rng)));
        };
        PeriodicScalarEq eq =
            eq_from_terms({{3, a3}, {2, rand_tp()}, {1, rand_tp()}, {0, rand_tp()}});
        CountPeriodicResult cp = count_periodic(eq, {-3, 3}, grid, opts);
        CHECK(cp.fixed_points.size() <= 3);
    }
}

TEST_CASE("the radial reduction reproduces its homogeneous layers", "[scalar][rigid]") {
    const std::vector<std::string> vars{"x", "y"};

    RatPoly Fc = RatPoly::constant(vars, Rational(7, 3));
    PeriodicScalarEq eq0 = rigid_to_scalar(Fc);
    REQUIRE(eq0.terms.size() == 1);
    CHECK(eq0.terms[0].exponent == 1);
    CHECK(eq0.terms[0].coeff == TrigPoly::constant(Rational(7, 3)));

    RatPoly x = RatPoly::variable(vars, 0), y = RatPoly::variable(vars, 1);
    PeriodicScalarEq eq1 = rigid_to_scalar(Rational(2) * x + Rational(-3) * y);
    REQUIRE(eq1.terms.size() == 1);
    CHECK(eq1.terms[0].exponent == 2);
    CHECK(eq1.terms[0].coeff.cos_coeff(1) == Rational(2));
    CHECK(eq1.terms[0].coeff.sin_coeff(1) == Rational(-3));

    RigidParams p{0.5, 1, -2, 3, 4, -5};
    PeriodicScalarEq eq2 = rigid_to_scalar(rigid_quadratic(p));
    REQUIRE(eq2.terms.size() == 3);
    CHECK(eq2.terms[0].exponent == 1);
    CHECK(eq2.terms[1].exponent == 2);
    CHECK(eq2.terms[2].exponent == 3);
    const TrigPoly& cubic = eq2.terms[2].coeff;
    CHECK(cubic.const_coeff() == Rational(-1));    // (d+f)/2
    CHECK(cubic.cos_coeff(2) == Rational(4));      // (d-f)/2
    CHECK(cubic.sin_coeff(2) == Rational(2));      // e/2
    // Sign-definiteness of the cubic layer is governed by e^2 - 4df.
    CHECK(cubic.changes_sign() == (p.delta() > 0));
    RigidParams pdef{0, 0, 0, 1, 1, 1};  // delta = -3
    CHECK_FALSE(rigid_to_scalar(rigid_quadratic(pdef)).terms.back().coeff.changes_sign());
}

TEST_CASE("reduced solutions obey the half-turn antisymmetry", "[scalar][rigid]") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    const double pi = std::numbers::pi;
    int tested = 0;
    for (int inst = 0; inst < 10; ++inst) {
        RigidParams p{U(rng), U(rng), U(rng), U(rng), U(rng), U(rng)};
        PeriodicScalarEq eq = rigid_to_scalar(rigid_quadratic(p));
        const double rho = 0.15;
        ScalarFlowResult half = scalar_flow(eq, rho, 1e-12, pi);
        if (half.blew_up) continue;
        ScalarFlowResult relay = scalar_flow(eq, -half.value, 1e-12, pi);
        ScalarFlowResult full = scalar_flow(eq, rho, 1e-12, 2 * pi);
        if (relay.blew_up || full.blew_up) continue;
        ++tested;
        CHECK(std::fabs(relay.value + full.value) < 1e-9);
    }
    CHECK(tested >= 8);
}

TEST_CASE("leading displacement coefficients of the rigid family", "[scalar][rigid]") {
    RigidLyapunov v1 = rigid_lyapunov({0.1, 0, 0, 0, 0, 0});
    CHECK(std::fabs(v1.V1 - (std::exp(0.2 * std::numbers::pi) - 1)) < 1e-12);
    CHECK(v1.V3 == 0);
    CHECK(v1.V5 == 0);

    RigidLyapunov v3 = rigid_lyapunov({0, 0, 0, 1, 0, 0});
    CHECK(v3.V1 == 0);
    CHECK(std::fabs(v3.V3 - std::numbers::pi) < 1e-15);

    RigidLyapunov v5 = rigid_lyapunov({0, 1, 2, 3, 4, -3});
    CHECK(std::fabs(v5.V3) < 1e-15);
    CHECK(std::fabs(v5.V5 - std::numbers::pi / 2) < 1e-14);
}

TEST_CASE("vanishing displacement coefficients mark a continuum", "[scalar][rigid]") {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(-0.12 + 0.03 * i);

    int centers = 0;
    while (centers < 20) {
        double b = U(rng), c = U(rng), e = U(rng);
        if (std::fabs(c * c - b * b) < 0.3) continue;
        double d = b * c * e / (c * c - b * b);
        RigidParams p{0, b, c, d, e, -d};
        RigidLyapunov v = rigid_lyapunov(p);
        REQUIRE(std::fabs(v.V1) < 1e-15);
        REQUIRE(std::fabs(v.V3) < 1e-15);
        REQUIRE(std::fabs(v.V5) < 1e-14);
        CountPeriodicResult cp = count_periodic(rigid_to_scalar(rigid_quadratic(p)), {-0.2, 0.2}, grid);
        CHECK(cp.continuum);
        ++centers;
    }

    // Any single nonvanishing coefficient breaks the continuum.
    for (RigidParams p : {RigidParams{0.05, 0, 0, 0, 0, 0},   // V1 != 0
                          RigidParams{0, 0, 0, 0.3, 0, 0},    // V3 != 0
                          RigidParams{0, 1, 2, 1, 0, -1}}) {  // V5 != 0
        CountPeriodicResult cp = count_periodic(rigid_to_scalar(rigid_quadratic(p)), {-0.2, 0.2}, grid);
        CHECK_FALSE(cp.continuum);
    }
}

TEST_CASE("necessary conditions for the singular problem", "[scalar][singular]") {
    const double T = 2 * std::numbers::pi;
    SingularNecessity n1 = singular_necessary(TrigPoly::sin_harmonic(1), T);
    CHECK(n1.changes_sign);
    CHECK(n1.mean == 0);
    CHECK(n1.verdict == SingularVerdict::FailsMean);

    SingularNecessity n2 =
        singular_necessary(TrigPoly::sin_harmonic(1) - tp_const(Rational(1, 10)), T);
    CHECK(n2.verdict == SingularVerdict::Candidate);
    CHECK(std::fabs(n2.mean + 0.1) < 1e-15);

    SingularNecessity n3 = singular_necessary(tp_const(-1), T);
    CHECK_FALSE(n3.changes_sign);
    CHECK(n3.verdict == SingularVerdict::FailsSign);

    CHECK_THROWS_AS(singular_necessary(TrigPoly::zero(), T), std::domain_error);
}

TEST_CASE("shooting recovers a manufactured positive solution", "[scalar][singular]") {
    // x*(t) = 2 + cos t solves x^2 x'' = f with f = -(2 + cos t)^2 cos t.
    const double T = 2 * std::numbers::pi;
    TrigPoly xs = tp_const(2) + TrigPoly::cos_harmonic(1);
    TrigPoly f = -(xs * xs * TrigPoly::cos_harmonic(1));
    CHECK(f.mean() == Rational(-2));

    SingularShootResult res = singular_shoot(2.0, f, T, 3.1, 0.1);
    REQUIRE(res.found);
    CHECK(std::fabs(res.x0 - 3.0) < 1e-8);
    CHECK(std::fabs(res.v0) < 1e-8);
    StateVec mid = res.trajectory.sample(std::numbers::pi);
    CHECK(std::fabs(mid[0] - 1.0) < 1e-7);

    SingularShootResult bad1 = singular_shoot(2.0, tp_const(-1), T, 3.0, 0.0);
    CHECK_FALSE(bad1.found);
    SingularShootResult bad2 = singular_shoot(2.0, TrigPoly::sin_harmonic(1), T, 3.0, 0.0);
    CHECK_FALSE(bad2.found);
    CHECK_THROWS_AS(singular_shoot(-1.0, f, T, 3.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(singular_shoot(2.0, f, T, -3.0, 0.0), std::invalid_argument);
}
