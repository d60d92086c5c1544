#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "planarlab/algebra/calculus.hpp"
#include "planarlab/core/rng.hpp"
#include "planarlab/cycles/find.hpp"
#include "planarlab/cycles/section.hpp"
#include "planarlab/dulac/certify.hpp"
#include "planarlab/dulac/instance.hpp"

using namespace planarlab;

namespace {

const std::vector<std::string> XY{"x", "y"};

RatPoly xv() { return RatPoly::variable(XY, 0); }
RatPoly yv() { return RatPoly::variable(XY, 1); }

// F = c x^3 + x^5 over (x, y).
RatPoly quintic_f(const Rational& c) {
    RatPoly f = RatPoly::constant(XY, Rational(0));
    f.add_term({3, 0}, c);
    f.add_term({5, 0}, Rational(1));
    return f;
}

// F = x(1 - c x^2) / (1 + c x^2) over (x, y).
RatFn rational_f(const Rational& c) {
    RatPoly num = RatPoly::constant(XY, Rational(0));
    num.add_term({1, 0}, Rational(1));
    num.add_term({3, 0}, -c);
    RatPoly den = RatPoly::constant(XY, Rational(1));
    den.add_term({2, 0}, c);
    return RatFn(num, den);
}

DulacInstance quintic_instance(const Rational& c, std::optional<FactorHint> hint = std::nullopt) {
    RatFn F = as_ratfn(quintic_f(c));
    auto [p, q] = lienard_field(F);
    return DulacInstance(lienard_dulac_v(F, Rational(2) * c / 5), p, q, Rational(-1),
                         std::move(hint));
}

DulacInstance rational_instance(const Rational& c, std::optional<FactorHint> hint = std::nullopt) {
    RatFn F = rational_f(c);
    auto [p, q] = lienard_field(F);
    return DulacInstance(lienard_dulac_v(F, Rational(0)), p, q, Rational(-1), std::move(hint));
}

// The cofactor of the quintic example: 2(10x^4 + 10c x^2 + 3c^2)/5.
RatFn quintic_cofactor(const Rational& c) {
    RatPoly p = RatPoly::constant(XY, Rational(6) * c * c / 5);
    p.add_term({2, 0}, Rational(4) * c);
    p.add_term({4, 0}, Rational(4));
    return as_ratfn(p);
}

// The cofactor of the rational example: -4c / (1 + c x^2)^2.
RatFn rational_cofactor(const Rational& c) {
    RatPoly den = RatPoly::constant(XY, Rational(1));
    den.add_term({2, 0}, c);
    return RatFn(RatPoly::constant(XY, Rational(-4) * c), den * den);
}

RatPoly random_poly(CounterRng& rng, std::uint32_t max_deg) {
    RatPoly p = RatPoly::constant(XY, Rational(0));
    for (std::uint32_t i = 0; i <= max_deg; ++i)
        for (std::uint32_t j = 0; i + j <= max_deg; ++j) {
            int c = static_cast<int>(rng.next_u64() % 7) - 3;
            if (c != 0) p.add_term({i, j}, Rational(c));
        }
    return p;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

Box square_box(double half) {
    return Box({Interval(-half, half), Interval(-half, half)});
}

}  // namespace

TEST_CASE("m_s reproduces the quintic Lienard closed form", "[dulac]") {
    for (Rational c : {Rational(-1), Rational(2), Rational(1, 3)}) {
        DulacInstance inst = quintic_instance(c);
        RatFn expected = as_ratfn(xv() * xv()) * quintic_cofactor(c);
        REQUIRE(m_s(inst) == expected);
    }
}

TEST_CASE("m_s reproduces the rational Lienard closed form", "[dulac]") {
    for (Rational c : {Rational(1), Rational(2), Rational(1, 2)}) {
        DulacInstance inst = rational_instance(c);
        RatPoly x4 = xv().pow(4);
        REQUIRE(m_s(inst) == as_ratfn(x4) * rational_cofactor(c));
    }
}

TEST_CASE("m_s with V = 1 and s = 1 is the divergence", "[dulac]") {
    CounterRng rng(20260814, 5);
    for (int rep = 0; rep < 4; ++rep) {
        RatPoly p = random_poly(rng, 3);
        RatPoly q = random_poly(rng, 3);
        DulacInstance inst(RatPoly::constant(XY, Rational(1)), p, q, Rational(1));
        REQUIRE(m_s(inst) == as_ratfn(poly_divergence(p, q)));
    }
}

TEST_CASE("m_s is linear in the field and in V", "[dulac]") {
    CounterRng rng(20260814, 6);
    for (Rational s : {Rational(-1), Rational(1, 2)}) {
        for (int rep = 0; rep < 4; ++rep) {
            RatPoly v1 = random_poly(rng, 2), v2 = random_poly(rng, 2);
            RatPoly p1 = random_poly(rng, 3), p2 = random_poly(rng, 3);
            RatPoly q1 = random_poly(rng, 3), q2 = random_poly(rng, 3);
            RatFn sum_field = m_s(DulacInstance(v1, p1 + p2, q1 + q2, s));
            REQUIRE(sum_field == m_s(DulacInstance(v1, p1, q1, s)) +
                                     m_s(DulacInstance(v1, p2, q2, s)));
            RatFn sum_v = m_s(DulacInstance(v1 + v2, p1, q1, s));
            REQUIRE(sum_v == m_s(DulacInstance(v1, p1, q1, s)) +
                                 m_s(DulacInstance(v2, p1, q1, s)));
            REQUIRE(m_s(DulacInstance(Rational(3) * v1, p1, q1, s)) ==
                    Rational(3) * m_s(DulacInstance(v1, p1, q1, s)));
        }
    }
}

TEST_CASE("dis_y matches the hand computations", "[dulac]") {
    SECTION("rational example") {
        RatFn F = rational_f(Rational(1));
        RatFn V = lienard_dulac_v(F, Rational(0));
        RatPoly num = RatPoly::constant(XY, Rational(0));
        num.add_term({2, 0}, Rational(-3));
        num.add_term({4, 0}, Rational(-10));
        num.add_term({6, 0}, Rational(-3));
        RatPoly den = RatPoly::constant(XY, Rational(1));
        den.add_term({2, 0}, Rational(1));
        REQUIRE(dis_y(V) == RatFn(num, den * den));
        REQUIRE(dis_y(V) == F * F - as_ratfn(Rational(4) * (xv() * xv())));
    }
    SECTION("quintic example") {
        Rational c(-1);
        RatFn F = as_ratfn(quintic_f(c));
        RatFn V = lienard_dulac_v(F, Rational(2) * c / 5);
        RatFn expected =
            F * F - as_ratfn(Rational(4) * (xv() * xv()) +
                             RatPoly::constant(XY, Rational(8) * c / 5));
        REQUIRE(dis_y(V) == expected);
    }
    SECTION("shape errors") {
        REQUIRE_THROWS_AS(dis_y(as_ratfn(yv().pow(3))), std::invalid_argument);
        RatPoly yden = RatPoly::constant(XY, Rational(1)) + yv();
        REQUIRE_THROWS_AS(dis_y(RatFn(yv() * yv(), yden)), std::invalid_argument);
    }
}

TEST_CASE("quintic Lienard certifies at most one cycle", "[dulac]") {
    Rational c(-1);
    RatPoly factor = RatPoly::constant(XY, Rational(0));
    factor.add_term({2, 0}, Rational(1));
    DulacInstance inst = quintic_instance(c, FactorHint{factor, quintic_cofactor(c)});
    DulacCertificate cert = certify_dulac(inst, square_box(5.0), 10);
    REQUIRE(cert.verdict == DulacVerdict::AtMostOneCycle);
    REQUIRE(cert.cofactor_sign == 1);
    REQUIRE(cert.used_hint);
    REQUIRE(cert.method == "sturm-global");
    REQUIRE(cert.topology_checked);
    REQUIRE(cert.holed_component_possible);
}

TEST_CASE("rational Lienard certifies at most one cycle", "[dulac]") {
    Rational c(1);
    RatPoly factor = RatPoly::constant(XY, Rational(0));
    factor.add_term({4, 0}, Rational(1));
    DulacInstance inst = rational_instance(c, FactorHint{factor, rational_cofactor(c)});
    DulacCertificate cert = certify_dulac(inst, square_box(5.0), 10);
    REQUIRE(cert.verdict == DulacVerdict::AtMostOneCycle);
    REQUIRE(cert.cofactor_sign == -1);
    REQUIRE(cert.method == "sturm-global");
    REQUIRE(cert.topology_checked);
    REQUIRE(cert.topology_note.find("at most one holed") != std::string::npos);
}

TEST_CASE("semidefinite m_s without a hint stays unknown", "[dulac]") {
    DulacInstance inst = quintic_instance(Rational(-1));
    DulacCertificate cert = certify_dulac(inst, square_box(2.0), 6);
    REQUIRE(cert.verdict == DulacVerdict::Unknown);
    REQUIRE(cert.cofactor_sign == 0);
    REQUIRE(cert.explanation.find("hint") != std::string::npos);
}

TEST_CASE("bad hints are rejected", "[dulac]") {
    Rational c(-1);
    RatPoly x2 = RatPoly::constant(XY, Rational(0));
    x2.add_term({2, 0}, Rational(1));
    RatPoly two_terms = x2 + RatPoly::constant(XY, Rational(1));
    RatPoly odd = RatPoly::constant(XY, Rational(0));
    odd.add_term({3, 0}, Rational(1));
    REQUIRE_THROWS_AS(
        certify_dulac(quintic_instance(c, FactorHint{two_terms, quintic_cofactor(c)}),
                      square_box(5.0), 8),
        std::invalid_argument);
    REQUIRE_THROWS_AS(certify_dulac(quintic_instance(c, FactorHint{odd, quintic_cofactor(c)}),
                                    square_box(5.0), 8),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        certify_dulac(quintic_instance(c, FactorHint{Rational(-1) * x2, quintic_cofactor(c)}),
                      square_box(5.0), 8),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        certify_dulac(
            quintic_instance(c, FactorHint{x2, Rational(2) * quintic_cofactor(c)}),
            square_box(5.0), 8),
        std::invalid_argument);
}

TEST_CASE("bivariate cofactor goes through the box and leading form", "[dulac]") {
    // div = 2 + x^4 + x^2 y^2 - x + y^4 - y: strictly positive, genuinely
    // bivariate, leading form x^4 + x^2 y^2 + y^4 bounded below by 3/4 on
    // the circle.
    RatPoly p = RatPoly::constant(XY, Rational(0));
    p.add_term({1, 0}, Rational(2));
    p.add_term({5, 0}, Rational(1, 5));
    p.add_term({3, 2}, Rational(1, 3));
    p.add_term({2, 0}, Rational(-1, 2));
    RatPoly q = RatPoly::constant(XY, Rational(0));
    q.add_term({0, 5}, Rational(1, 5));
    q.add_term({0, 2}, Rational(-1, 2));
    DulacInstance inst(RatPoly::constant(XY, Rational(1)), p, q, Rational(1));

    DulacCertificate cert = certify_dulac(inst, square_box(6.0), 14);
    REQUIRE(cert.verdict == DulacVerdict::NoCycles);
    REQUIRE(cert.method == "box+leading-form");
    REQUIRE(cert.cofactor_sign == 1);
    REQUIRE(cert.box_check.definite);
    REQUIRE(cert.box_check.leaves >= 1);
    REQUIRE(cert.leading_form.definite);
    REQUIRE(cert.leading_form.min_abs > 0.5);
    REQUIRE(cert.leading_form.crossover_radius <= 6.0);
    REQUIRE_FALSE(cert.holed_component_possible);

    DulacCertificate small = certify_dulac(inst, square_box(2.0), 14);
    REQUIRE(small.verdict == DulacVerdict::Unknown);
    REQUIRE(small.explanation.find("radius") != std::string::npos);
}

TEST_CASE("certified instances never produce two cycles", "[dulac]") {
    struct Case {
        DulacInstance inst;
        double grid_hi;
    };
    RatPoly x2 = RatPoly::constant(XY, Rational(0));
    x2.add_term({2, 0}, Rational(1));
    RatPoly x4 = RatPoly::constant(XY, Rational(0));
    x4.add_term({4, 0}, Rational(1));
    std::vector<Case> cases;
    for (Rational c : {Rational(-1), Rational(-3, 2), Rational(-1, 2)})
        cases.push_back({quintic_instance(c, FactorHint{x2, quintic_cofactor(c)}), 3.0});
    for (Rational c : {Rational(1), Rational(2)})
        cases.push_back({rational_instance(c, FactorHint{x4, rational_cofactor(c)}), 4.0});

    for (std::size_t i = 0; i < cases.size(); ++i) {
        DulacCertificate cert = certify_dulac(cases[i].inst, square_box(5.0), 10);
        REQUIRE(cert.verdict == DulacVerdict::AtMostOneCycle);
        VectorField2 vf(cases[i].inst.P, cases[i].inst.Q);
        FindCyclesOptions opts;
        opts.ret.max_time = 400.0;
        FindCyclesResult found =
            find_cycles(vf, Section::positive_x_axis(0.05, 50.0), linspace(0.3, cases[i].grid_hi, 12), opts);
        INFO("instance " << i);
        REQUIRE(found.cycles.size() <= 1);
        if (i == 0) {
            // For c = -1 the cycle exists and is attracting.
            REQUIRE(found.cycles.size() == 1);
            REQUIRE(found.cycles[0].classification == CycleClass::HyperbolicStable);
        }
    }
}

TEST_CASE("exponential Dulac candidates are documented as unrepresentable", "[dulac]") {
    DulacCertificate cert = unrepresentable_dulac("V = exp(-2by) for the quadratic case");
    REQUIRE(cert.verdict == DulacVerdict::Unknown);
    REQUIRE(cert.explanation.find("rational class") != std::string::npos);
}

TEST_CASE("instances and certificates round-trip through JSON", "[dulac]") {
    Rational c(1);
    RatPoly x4 = RatPoly::constant(XY, Rational(0));
    x4.add_term({4, 0}, Rational(1));
    DulacInstance inst = rational_instance(c, FactorHint{x4, rational_cofactor(c)});
    DulacInstance back = dulac_instance_from_json(to_json(inst));
    REQUIRE(back.s == inst.s);
    REQUIRE(back.hint.has_value());
    REQUIRE(m_s(back) == m_s(inst));

    DulacCertificate cert = certify_dulac(inst, square_box(5.0), 10);
    Json j = to_json(cert);
    REQUIRE(j.at("verdict") == "at-most-one-cycle");
    REQUIRE(j.at("cofactor_sign") == -1);
    REQUIRE(j.at("method") == "sturm-global");
    REQUIRE(j.at("box").size() == 2);
    REQUIRE(j.at("topology_checked") == true);
}

TEST_CASE("certify_dulac validates its arguments", "[dulac]") {
    DulacInstance inst = quintic_instance(Rational(-1));
    REQUIRE_THROWS_AS(certify_dulac(inst, Box({Interval(-1, 1)}), 4), std::invalid_argument);
    REQUIRE_THROWS_AS(certify_dulac(inst, square_box(2.0), -1), std::invalid_argument);
}
