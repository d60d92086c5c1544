#pragma once

// JSON form of polynomials and rational functions. Schema:
//   {"vars": ["x", "y"], "terms": [{"e": [2, 0], "c": "1/2"}, ...]}
// Coefficient strings are exact ("n", "n/d", or decimal). Gaussian
// coefficients use {"re": "...", "im": "..."}. Emission follows the
// canonical graded-lex term order, so serialization is deterministic.

#include "planarlab/algebra/rational_fn.hpp"

#include <json.hpp>

namespace planarlab {

using Json = nlohmann::json;

inline Json to_json(const RatPoly& p) {
    Json terms = Json::array();
    for (auto& [e, c] : p.terms()) {
        Json t;
        t["e"] = e;
        t["c"] = format_rational(c);
        terms.push_back(std::move(t));
    }
    return Json{{"vars", p.vars()}, {"terms", std::move(terms)}};
}

inline Json to_json(const GaussPoly& p) {
    Json terms = Json::array();
    for (auto& [e, c] : p.terms()) {
        Json t;
        t["e"] = e;
        if (c.is_real()) {
            t["c"] = format_rational(c.re);
        } else {
            t["c"] = Json{{"re", format_rational(c.re)}, {"im", format_rational(c.im)}};
        }
        terms.push_back(std::move(t));
    }
    return Json{{"vars", p.vars()}, {"terms", std::move(terms)}};
}

inline RatPoly ratpoly_from_json(const Json& j) {
    RatPoly p(j.at("vars").get<std::vector<std::string>>());
    for (auto& t : j.at("terms")) {
        Exponents e = t.at("e").get<Exponents>();
        p.add_term(std::move(e), parse_rational(t.at("c").get<std::string>()));
    }
    return p;
}

inline GaussPoly gausspoly_from_json(const Json& j) {
    GaussPoly p(j.at("vars").get<std::vector<std::string>>());
    for (auto& t : j.at("terms")) {
        Exponents e = t.at("e").get<Exponents>();
        const Json& c = t.at("c");
        GaussianRational g;
        if (c.is_string()) {
            g = GaussianRational(parse_rational(c.get<std::string>()));
        } else {
            g = GaussianRational(parse_rational(c.at("re").get<std::string>()),
                                 parse_rational(c.at("im").get<std::string>()));
        }
        p.add_term(std::move(e), g);
    }
    return p;
}

inline Json to_json(const RatFn& f) {
    return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RatFn ratfn_from_json(const Json& j) {
    if (j.contains("den")) return {ratpoly_from_json(j.at("num")), ratpoly_from_json(j.at("den"))};
    return RatFn(ratpoly_from_json(j));
}

}  // namespace planarlab
