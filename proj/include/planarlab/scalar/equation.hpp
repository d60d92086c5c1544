#pragma once

// Periodic scalar equations x' = sum_j A_j(t) x^(e_j) with trig-polynomial
// coefficients: the time-T flow with first-class blow-up reporting, and
// counting of isolated periodic solutions on a grid (a lower bound; grid
// points that escape are reported, never dropped).

#include "planarlab/algebra/json.hpp"
#include "planarlab/cycles/find.hpp"
#include "planarlab/flow/integrate.hpp"
#include "planarlab/scalar/trigpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace planarlab {

struct ScalarTerm {
    int exponent = 1;  // >= 0
    TrigPoly coeff;    // function of tau = omega t
};

struct PeriodicScalarEq {
    std::vector<ScalarTerm> terms;
    double T = 2 * std::numbers::pi;
    std::string period_text = "2*pi";

    double omega() const { return 2 * std::numbers::pi / T; }

    double rhs(double t, double x) const {
        const double tau = omega() * t;
        double acc = 0;
        for (auto& term : terms) {
            double xp = 1;
            for (int i = 0; i < term.exponent; ++i) xp *= x;
            acc += term.coeff.eval(tau) * xp;
        }
        return acc;
    }

    // d(rhs)/dx, for the variational multiplier.
    double rhs_x(double t, double x) const {
        const double tau = omega() * t;
        double acc = 0;
        for (auto& term : terms) {
            if (term.exponent == 0) continue;
            double xp = term.exponent;
            for (int i = 1; i < term.exponent; ++i) xp *= x;
            acc += term.coeff.eval(tau) * xp;
        }
        return acc;
    }
};

inline PeriodicScalarEq make_scalar_eq(std::vector<ScalarTerm> terms, double T,
                                       std::string period_text = {}) {
    if (!(T > 0)) throw std::invalid_argument("PeriodicScalarEq: period must be positive");
    PeriodicScalarEq eq;
    eq.terms = std::move(terms);
    eq.T = T;
    if (period_text.empty()) {
        if (T == 2 * std::numbers::pi) {
            period_text = "2*pi";
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", T);
            period_text = buf;
        }
    }
    eq.period_text = std::move(period_text);
    return eq;
}

// ---- JSON ------------------------------------------------------------------
// Trig poly: {"harmonics": [{"k":0,"cos":"1/2"},{"k":1,"cos":"0","sin":"-1"}],
//             "period": "2*pi"}; "period" is optional on embedded coefficients.
// Equation: {"terms": [{"exponent":3,"coeff":{...}}], "period":"2*pi"}.

// Accepts "pi", "2*pi", "pi/2", "3/2*pi", or a plain rational/decimal.
inline double parse_period(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    auto pos = s.find("pi");
    if (pos == std::string::npos) {
        double v = to_double(parse_rational(s));
        if (!(v > 0)) throw std::invalid_argument("parse_period: period must be positive");
        return v;
    }
    std::string before = s.substr(0, pos);
    std::string after = s.substr(pos + 2);
    if (!before.empty() && before.back() == '*') before.pop_back();
    if (!after.empty() && after.front() == '/') after.erase(after.begin());
    Rational mult = before.empty() ? Rational(1) : parse_rational(before);
    Rational div = after.empty() ? Rational(1) : parse_rational(after);
    if (div == 0) throw std::invalid_argument("parse_period: division by zero");
    double v = to_double(mult / div) * std::numbers::pi;
    if (!(v > 0)) throw std::invalid_argument("parse_period: period must be positive");
    return v;
}

inline Json to_json(const TrigPoly& f) {
    Json harmonics = Json::array();
    std::vector<int> ks;
    for (auto& [k, v] : f.c) {
        if (k >= 0) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    for (int k : ks) {
        Json h;
        h["k"] = k;
        Rational ck = f.cos_coeff(k);
        if (ck != 0 || k == 0) h["cos"] = format_rational(ck);
        if (k > 0) {
            Rational sk = f.sin_coeff(k);
            if (sk != 0) h["sin"] = format_rational(sk);
        }
        harmonics.push_back(std::move(h));
    }
    return Json{{"harmonics", std::move(harmonics)}};
}

inline Rational rational_from_json(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return Rational(v.get<double>());
    throw std::invalid_argument("expected a rational (string or number)");
}

inline TrigPoly trigpoly_from_json(const Json& j) {
    TrigPoly f;
    for (auto& h : j.at("harmonics")) {
        int k = h.at("k").get<int>();
        if (k < 0) throw std::invalid_argument("trigpoly_from_json: harmonic k >= 0");
        if (h.contains("cos")) f = f + TrigPoly::cos_harmonic(k, rational_from_json(h.at("cos")));
        if (h.contains("sin")) f = f + TrigPoly::sin_harmonic(k, rational_from_json(h.at("sin")));
    }
    return f;
}

inline Json to_json(const PeriodicScalarEq& eq) {
    Json terms = Json::array();
    for (auto& t : eq.terms) {
        terms.push_back(Json{{"exponent", t.exponent}, {"coeff", to_json(t.coeff)}});
    }
    return Json{{"terms", std::move(terms)}, {"period", eq.period_text}};
}

inline PeriodicScalarEq scalar_eq_from_json(const Json& j) {
    std::vector<ScalarTerm> terms;
    for (auto& t : j.at("terms")) {
        int e = t.at("exponent").get<int>();
        if (e < 0) throw std::invalid_argument("scalar_eq_from_json: exponent >= 0");
        terms.push_back({e, trigpoly_from_json(t.at("coeff"))});
    }
    std::string ptext = j.at("period").is_string() ? j.at("period").get<std::string>()
                                                   : j.at("period").dump();
    return make_scalar_eq(std::move(terms), parse_period(ptext), ptext);
}

// ---- Flow ------------------------------------------------------------------

struct ScalarFlowResult {
    bool blew_up = false;
    double value = std::numeric_limits<double>::quiet_NaN();  // x(t_end) when finite
    double t_star = std::numeric_limits<double>::quiet_NaN(); // escape time otherwise
};

// Flow of the scalar equation from x(0) = rho to t_end (default one period).
inline ScalarFlowResult scalar_flow(const PeriodicScalarEq& eq, double rho, double tol = 1e-10,
                                    double t_end = -1) {
    if (!std::isfinite(rho)) throw std::invalid_argument("scalar_flow: rho must be finite");
    if (t_end < 0) t_end = eq.T;
    OdeSystem sys;
    sys.dim = 1;
    sys.rhs = [&eq](double t, const StateVec& s, StateVec& ds) { ds[0] = eq.rhs(t, s[0]); };
    IntegrateOptions opts;
    opts.tol = tol;
    opts.store_dense = false;
    StateVec x0(1);
    x0[0] = rho;
    Trajectory tr = integrate(sys, x0, 0, t_end, opts);
    ScalarFlowResult out;
    if (tr.outcome == FlowOutcome::Completed) {
        out.value = tr.x_final[0];
    } else {
        out.blew_up = true;
        out.t_star = tr.t_final;
    }
    return out;
}

// Multiplier of the time-T map at rho via the variational equation
// D' = f_x(t, x(t)), multiplier = exp(D(T)). Used as the oracle route; the
// counting below sticks to finite differences.
inline ScalarFlowResult scalar_multiplier(const PeriodicScalarEq& eq, double rho,
                                          double tol = 1e-10) {
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [&eq](double t, const StateVec& s, StateVec& ds) {
        ds[0] = eq.rhs(t, s[0]);
        ds[1] = eq.rhs_x(t, s[0]);
    };
    IntegrateOptions opts;
    opts.tol = tol;
    opts.store_dense = false;
    StateVec x0(2);
    x0[0] = rho;
    x0[1] = 0;
    Trajectory tr = integrate(sys, x0, 0, eq.T, opts);
    ScalarFlowResult out;
    if (tr.outcome == FlowOutcome::Completed) {
        out.value = std::exp(tr.x_final[1]);
    } else {
        out.blew_up = true;
        out.t_star = tr.t_final;
    }
    return out;
}

// ---- Periodic-solution counting ---------------------------------------------

struct ScalarFixedPoint {
    double rho = 0;
    double multiplier = std::numeric_limits<double>::quiet_NaN();
    CycleClass classification = CycleClass::NonHyperbolicCandidate;
};

struct ScalarBlowUp {
    double rho = 0;
    double t_star = 0;
};

struct CountPeriodicResult {
    std::vector<ScalarFixedPoint> fixed_points;
    bool continuum = false;
    std::vector<ScalarBlowUp> excluded;
};

struct CountPeriodicOptions {
    double tol = 1e-10;
    double bisect_tol = 1e-10;
    double fd_step_rel = 1e-4;
    double hyperbolic_margin = 1e-5;  // |multiplier - 1| below this is a candidate
    double continuum_tol = 1e-8;
    double grid_zero_tol = 1e-11;  // |phi(rho) - rho| below this at a grid point is a root
};

// Fixed points of rho -> phi(T; rho) on the grid span: sign-change bisection
// between adjacent non-escaping grid points, plus a probe toward any escape
// boundary (a repelling fixed point can sit arbitrarily close to the set of
// initial values that blow up before T, as for x' = x^2 - 1 at rho = 1).
inline CountPeriodicResult count_periodic(const PeriodicScalarEq& eq,
                                          std::pair<double, double> rho_range,
                                          const std::vector<double>& grid,
                                          const CountPeriodicOptions& opts = {}) {
    if (grid.size() < 2) throw std::invalid_argument("count_periodic: need at least 2 grid points");
    for (double r : grid) {
        if (r < rho_range.first || r > rho_range.second) {
            throw std::invalid_argument("count_periodic: grid point outside rho_range");
        }
    }

    CountPeriodicResult out;
    auto gap = [&](double rho) -> std::optional<double> {
        ScalarFlowResult res = scalar_flow(eq, rho, opts.tol);
        if (res.blew_up) return std::nullopt;
        return res.value - rho;
    };

    std::vector<std::optional<double>> g(grid.size());
    std::size_t ok = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ScalarFlowResult res = scalar_flow(eq, grid[i], opts.tol);
        if (res.blew_up) {
            out.excluded.push_back({grid[i], res.t_star});
        } else {
            g[i] = res.value - grid[i];
            ++ok;
        }
    }
    if (ok == 0) return out;

    bool all_small = true;
    for (auto& v : g) {
        if (v && std::fabs(*v) > opts.continuum_tol) all_small = false;
    }
    if (all_small && ok == grid.size()) {
        out.continuum = true;
        return out;
    }

    std::vector<double> roots;
    auto add_root = [&](double r) {
        for (double seen : roots) {
            if (std::fabs(seen - r) < 1e-7 * std::max(1.0, std::fabs(r))) return;
        }
        roots.push_back(r);
    };
    auto bisect = [&](double a, double ga, double b) {
        while (b - a > opts.bisect_tol * std::max(1.0, std::fabs(a))) {
            double mid = 0.5 * (a + b);
            auto gm = gap(mid);
            if (!gm) return;  // escape inside the bracket; give up on it
            if (*gm == 0) {
                add_root(mid);
                return;
            }
            if ((ga < 0) != (*gm < 0)) {
                b = mid;
            } else {
                a = mid;
                ga = *gm;
            }
        }
        add_root(0.5 * (a + b));
    };

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (g[i] && std::fabs(*g[i]) <= opts.grid_zero_tol) add_root(grid[i]);
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (g[i] && g[i + 1]) {
            if ((*g[i] < 0) != (*g[i + 1] < 0) && std::fabs(*g[i]) > opts.grid_zero_tol &&
                std::fabs(*g[i + 1]) > opts.grid_zero_tol) {
                bisect(grid[i], *g[i], grid[i + 1]);
            }
            continue;
        }
        // One side escapes: walk toward the escape boundary looking for a
        // sign change among surviving values.
        const bool left_good = static_cast<bool>(g[i]);
        if (!g[i] && !g[i + 1]) continue;
        double good = left_good ? grid[i] : grid[i + 1];
        double ggood = left_good ? *g[i] : *g[i + 1];
        double bad = left_good ? grid[i + 1] : grid[i];
        if (std::fabs(ggood) <= opts.grid_zero_tol) continue;
        for (int it = 0; it < 80; ++it) {
            if (std::fabs(good - bad) < opts.bisect_tol * std::max(1.0, std::fabs(good))) break;
            double mid = 0.5 * (good + bad);
            auto gm = gap(mid);
            if (!gm) {
                bad = mid;
                continue;
            }
            if (std::fabs(*gm) <= opts.grid_zero_tol) {
                add_root(mid);
                break;
            }
            if ((*gm < 0) != (ggood < 0)) {
                if (left_good) {
                    bisect(good, ggood, mid);
                } else {
                    bisect(mid, *gm, good);
                }
                break;
            }
            good = mid;
            ggood = *gm;
        }
    }

    std::sort(roots.begin(), roots.end());
    for (double r : roots) {
        ScalarFixedPoint fp;
        fp.rho = r;
        const double h = opts.fd_step_rel * std::max(1.0, std::fabs(r));
        ScalarFlowResult up = scalar_flow(eq, r + h, opts.tol);
        ScalarFlowResult dn = scalar_flow(eq, r - h, opts.tol);
        if (!up.blew_up && !dn.blew_up) {
            fp.multiplier = (up.value - dn.value) / (2 * h);
            if (std::fabs(fp.multiplier - 1) < opts.hyperbolic_margin) {
                fp.classification = CycleClass::NonHyperbolicCandidate;
            } else if (std::fabs(fp.multiplier) < 1) {
                fp.classification = CycleClass::HyperbolicStable;
            } else {
                fp.classification = CycleClass::HyperbolicUnstable;
            }
        } else {
            // A neighbor escapes before T: the solution is not Lyapunov
            // stable, and no finite-difference multiplier is trustworthy.
            fp.classification = CycleClass::HyperbolicUnstable;
        }
        out.fixed_points.push_back(fp);
    }
    return out;
}

}  // namespace planarlab
