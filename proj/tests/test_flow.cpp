#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "planarlab/algebra/loewner.hpp"
#include "planarlab/flow/csv.hpp"
#include "planarlab/flow/equilibria.hpp"
#include "planarlab/flow/field.hpp"
#include "planarlab/flow/index.hpp"
#include "planarlab/flow/integrate.hpp"
#include "planarlab/systems/builtins.hpp"

using namespace planarlab;

namespace {

const std::vector<std::string> XY{"x", "y"};

RatPoly px() { return RatPoly::variable(XY, 0); }
RatPoly py() { return RatPoly::variable(XY, 1); }

// Potential of the lattice field (F(y), -F(x)): H = G(x) + G(y), G' = F.
double chessboard_energy(double x, double y) {
    auto G = [](double u) { return u * u * u * u / 4 - 2 * u * u * u + 5.5 * u * u - 6 * u; };
    return G(x) + G(y);
}

}  // namespace

TEST_CASE("circular orbit returns after one period", "[flow]") {
    VectorField2 vf = builtins::linear_center();
    IntegrateOptions opts;
    opts.tol = 1e-12;
    Trajectory tr = integrate(vf, StateVec{1.0, 0.0}, 0.0, 2 * std::numbers::pi, opts);
    REQUIRE(tr.outcome == FlowOutcome::Completed);
    CHECK(std::fabs(tr.x_final[0] - 1.0) < 1e-9);
    CHECK(std::fabs(tr.x_final[1]) < 1e-9);

    // Dense output tracks the closed form and reproduces the stored states.
    for (double t : {0.3, 1.7, 4.4, 6.1}) {
        StateVec s = tr.sample(t);
        CHECK(std::fabs(s[0] - std::cos(t)) < 1e-9);
        CHECK(std::fabs(s[1] - std::sin(t)) < 1e-9);
    }
    for (std::size_t i = 0; i + 1 < tr.times.size(); ++i) {
        REQUIRE(tr.times[i] < tr.times[i + 1]);
        StateVec s = tr.sample(tr.times[i]);
        CHECK(std::fabs(s[0] - tr.states[i][0]) < 1e-12);
        CHECK(std::fabs(s[1] - tr.states[i][1]) < 1e-12);
    }
}

TEST_CASE("scalar exponential growth", "[flow]") {
    OdeSystem sys;
    sys.dim = 1;
    sys.rhs = [](double, const StateVec& y, StateVec& dy) { dy[0] = y[0]; };
    IntegrateOptions opts;
    opts.tol = 1e-12;
    Trajectory tr = integrate(sys, StateVec{1.0}, 0.0, 1.0, opts);
    REQUIRE(tr.outcome == FlowOutcome::Completed);
    CHECK(std::fabs(tr.x_final[0] - std::exp(1.0)) < 1e-10);
}

TEST_CASE("contracting 3D system follows its closed-form orbit", "[flow]") {
    OdeSystem sys = builtins::cimen_system(1);
    StateVec x0 = builtins::cimen_solution(0.0, 1);
    REQUIRE(x0[0] == 18.0);
    REQUIRE(x0[1] == -12.0);
    IntegrateOptions opts;
    opts.tol = 1e-12;
    Trajectory tr = integrate(sys, x0, 0.0, 1.0, opts);
    REQUIRE(tr.outcome == FlowOutcome::Completed);
    StateVec ref = builtins::cimen_solution(1.0, 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(tr.x_final[i] - ref[i]) < 1e-8);
}

TEST_CASE("energy is conserved along Hamiltonian orbits", "[flow]") {
    VectorField2 vf = builtins::chessboard_field();
    REQUIRE(vf.is_hamiltonian());
    const double H0 = chessboard_energy(2.1, 2.0);
    for (double tol : {1e-9, 1e-12}) {
        IntegrateOptions opts;
        opts.tol = tol;
        Trajectory tr = integrate(vf, StateVec{2.1, 2.0}, 0.0, 100.0, opts);
        REQUIRE(tr.outcome == FlowOutcome::Completed);
        double worst = 0;
        for (auto& s : tr.states) worst = std::max(worst, std::fabs(chessboard_energy(s[0], s[1]) - H0));
        CHECK(worst < 100 * tol);
    }
}

TEST_CASE("forward then backward integration returns to the start", "[flow]") {
    VectorField2 vf = builtins::chessboard_field();
    IntegrateOptions opts;
    opts.tol = 1e-10;
    Trajectory fwd = integrate(vf, StateVec{2.1, 2.0}, 0.0, 10.0, opts);
    REQUIRE(fwd.outcome == FlowOutcome::Completed);
    Trajectory bwd = integrate(vf, fwd.x_final, 10.0, 0.0, opts);
    REQUIRE(bwd.outcome == FlowOutcome::Completed);
    CHECK(std::fabs(bwd.x_final[0] - 2.1) < 100 * opts.tol);
    CHECK(std::fabs(bwd.x_final[1] - 2.0) < 100 * opts.tol);
}

TEST_CASE("axis crossings are located on the dense output", "[flow]") {
    VectorField2 vf = builtins::linear_center();
    IntegrateOptions opts;
    opts.tol = 1e-12;
    EventSpec ev;
    ev.id = 7;
    ev.g = [](double, const StateVec& s) { return s[1]; };
    opts.events.push_back(ev);
    Trajectory tr = integrate(vf, StateVec{1.0, 0.0}, 0.0, 2.2 * std::numbers::pi, opts);
    REQUIRE(tr.outcome == FlowOutcome::Completed);
    REQUIRE(tr.events.size() == 2);
    CHECK(std::fabs(tr.events[0].t - std::numbers::pi) < 1e-9);
    CHECK(tr.events[0].direction == -1);
    CHECK(std::fabs(tr.events[1].t - 2 * std::numbers::pi) < 1e-9);
    CHECK(tr.events[1].direction == +1);
    for (auto& e : tr.events) CHECK(std::fabs(e.state[1]) < 1e-10);

    // min_time suppresses the first crossing.
    IntegrateOptions late = opts;
    late.events[0].min_time = 4.0;
    Trajectory tr2 = integrate(vf, StateVec{1.0, 0.0}, 0.0, 2.2 * std::numbers::pi, late);
    REQUIRE(tr2.events.size() == 1);
    CHECK(std::fabs(tr2.events[0].t - 2 * std::numbers::pi) < 1e-9);

    // A terminal downward crossing stops the flow at the far axis point.
    IntegrateOptions term = opts;
    term.events[0].terminal = true;
    term.events[0].direction = -1;
    Trajectory tr3 = integrate(vf, StateVec{1.0, 0.0}, 0.0, 100.0, term);
    REQUIRE(tr3.outcome == FlowOutcome::EventStop);
    CHECK(std::fabs(tr3.t_final - std::numbers::pi) < 1e-9);
    CHECK(std::fabs(tr3.x_final[0] + 1.0) < 1e-9);
    CHECK(std::fabs(tr3.x_final[1]) < 1e-10);
}

TEST_CASE("equilibria of the lattice field form the checker pattern", "[flow]") {
    VectorField2 vf = builtins::chessboard_field();
    auto eqs = classify_equilibria(vf, Box({Interval(0, 4), Interval(0, 4)}), 20);
    REQUIRE(eqs.size() == 9);
    int centers = 0, saddles = 0;
    for (auto& e : eqs) {
        if (e.type == EquilibriumType::Center) ++centers;
        if (e.type == EquilibriumType::Saddle) ++saddles;
        CHECK(std::fabs(e.x - std::round(e.x)) < 1e-9);
        CHECK(std::fabs(e.y - std::round(e.y)) < 1e-9);
    }
    CHECK(centers == 5);
    CHECK(saddles == 4);
}

TEST_CASE("linear saddle and linear center classify correctly", "[flow]") {
    VectorField2 saddle(px(), Rational(-1) * py());
    auto eqs = classify_equilibria(saddle, Box({Interval(-1, 1), Interval(-1, 1)}), 6);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].type == EquilibriumType::Saddle);
    CHECK(std::fabs(eqs[0].x) < 1e-10);

    auto eqs2 = classify_equilibria(builtins::linear_center(), Box({Interval(-1, 1), Interval(-1, 1)}), 6);
    REQUIRE(eqs2.size() == 1);
    CHECK(eqs2[0].type == EquilibriumType::Center);
}

TEST_CASE("winding number along circles", "[flow]") {
    VectorField2 radial(px(), py());
    CHECK(field_index(radial, 0, 0, 1.0) == 1);

    VectorField2 zsq(px() * px() - py() * py(), Rational(2) * px() * py());
    for (double r : {0.5, 1.0, 2.0}) CHECK(field_index(zsq, 0, 0, r) == 2);

    LoewnerField lf = loewner_field((px() * px() + py() * py()).pow(2), 2);
    VectorField2 lvf(lf.p, lf.q);
    CHECK(field_index(lvf, 0, 0, 1.0) == 2);

    CHECK_THROWS_AS(field_index(radial, 1, 0, 1.0), std::domain_error);
}

TEST_CASE("index sum inside a large circle matches the boundary winding", "[flow]") {
    VectorField2 vf = builtins::chessboard_field();
    auto eqs = classify_equilibria(vf, Box({Interval(0, 4), Interval(0, 4)}), 20);
    int sum = 0;
    for (auto& e : eqs) {
        REQUIRE(e.type != EquilibriumType::Degenerate);
        sum += (e.type == EquilibriumType::Saddle) ? -1 : 1;
    }
    CHECK(sum == field_index(vf, 2, 2, 2.5));
}

TEST_CASE("finite-time escape reports blow-up with the last state", "[flow]") {
    OdeSystem sys;
    sys.dim = 1;
    sys.rhs = [](double, const StateVec& y, StateVec& dy) { dy[0] = y[0] * y[0]; };
    Trajectory tr = integrate(sys, StateVec{1.0}, 0.0, 2.0, {});
    REQUIRE(tr.outcome == FlowOutcome::BlowUp);
    CHECK(tr.x_final[0] > 1e8);
    CHECK(std::fabs(tr.t_final - 1.0) < 1e-3);  // x(t) = 1/(1-t)
}

TEST_CASE("pole proximity is reported before the state degenerates", "[flow]") {
    RatPoly one = RatPoly::constant(XY, Rational(1));
    VectorField2 vf(FieldComponent(RatFn(one, one - px())), FieldComponent(RatPoly::constant(XY, Rational(0))));
    Trajectory tr = integrate(vf, StateVec{0.0, 0.0}, 0.0, 1.0, {});
    REQUIRE(tr.outcome == FlowOutcome::Pole);
    CHECK(tr.t_final <= 0.51);
    CHECK(tr.x_final[0] > 0.9);  // x(t) = 1 - sqrt(1 - 2t) -> 1 at t = 1/2

    CHECK_THROWS_AS(integrate(vf, StateVec{1.0, 0.0}, 0.0, 1.0, {}), std::invalid_argument);
}

TEST_CASE("tolerance floor is enforced", "[flow]") {
    IntegrateOptions opts;
    opts.tol = 1e-14;
    CHECK_THROWS_AS(integrate(builtins::linear_center(), StateVec{1.0, 0.0}, 0.0, 1.0, opts),
                    std::invalid_argument);
}

TEST_CASE("trajectory CSV has time, state, and event flag columns", "[flow]") {
    VectorField2 vf = builtins::linear_center();
    IntegrateOptions opts;
    opts.tol = 1e-10;
    EventSpec ev;
    ev.id = 1;
    ev.g = [](double, const StateVec& s) { return s[1]; };
    opts.events.push_back(ev);
    Trajectory tr = integrate(vf, StateVec{1.0, 0.0}, 0.0, 4.0, opts);
    REQUIRE(tr.events.size() == 1);

    std::ostringstream os;
    write_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "t,x,y,event");
    std::size_t rows = 0, flagged = 0;
    while (std::getline(is, line)) {
        ++rows;
        REQUIRE(std::count(line.begin(), line.end(), ',') == 3);
        if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++flagged;
    }
    CHECK(rows == tr.times.size() + tr.events.size());
    CHECK(flagged == 1);
}

TEST_CASE("field JSON round trip", "[flow]") {
    VectorField2 vf(px() * px() - py(), Rational(3) * px());
    Json j = to_json(vf);
    CHECK(j.at("kind") == "polynomial");
    VectorField2 back = vectorfield2_from_json(j);
    CHECK(back.P.poly() == vf.P.poly());
    CHECK(back.Q.poly() == vf.Q.poly());
    CHECK(back.degree() == 2);
    CHECK(back.monomial_count() == 3);

    Json jb;
    jb["kind"] = "builtin:linear-center";
    CHECK_THROWS_AS(vectorfield2_from_json(jb), std::invalid_argument);
}
