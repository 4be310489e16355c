#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hroot/certify.hpp"
#include "hroot/exppoly.hpp"
#include "hroot/laurent.hpp"
#include "hroot/multgroup.hpp"
#include "hroot/number_field.hpp"

namespace hroot {

// Default nlohmann ordering (keys sorted) keeps every emission byte-stable
// for a fixed input, which the golden tests rely on.
using Json = nlohmann::json;

inline long long_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer()) raise(errc::parse_error, std::string(what) + " must be an integer");
    return j.get<long>();
}

// ---------- number fields and their elements ----------

inline Json field_to_json(const FieldPtr& F) {
    Json mp = Json::array();
    for (const BigRat& c : F->min_poly()) mp.push_back(rat_to_string(c));
    return Json{{"min_poly", mp}, {"var", F->var()}};
}

inline FieldPtr field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("min_poly") || !j["min_poly"].is_array())
        raise(errc::parse_error, "field document needs a min_poly array");
    RatPoly mp;
    for (const Json& c : j["min_poly"]) {
        if (!c.is_string()) raise(errc::parse_error, "min_poly entries must be strings");
        mp.push_back(rat_from_string(c.get<std::string>()));
    }
    std::string var = j.value("var", std::string("t"));
    return NumberField::make(std::move(mp), var);
}

inline Json element_to_json(const NFElement& x) {
    Json coords = Json::array();
    const RatPoly& c = x.coords();
    for (int i = 0; i < x.field()->degree(); ++i)
        coords.push_back(rat_to_string(i < static_cast<int>(c.size()) ? c[i] : BigRat(0)));
    return Json{{"coords", coords}};
}

inline NFElement element_from_json(const Json& j, const FieldPtr& F) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        raise(errc::parse_error, "element document needs a coords array");
    if (j["coords"].size() > static_cast<size_t>(F->degree()))
        raise(errc::parse_error, "element has more coordinates than the field degree");
    RatPoly c;
    for (const Json& v : j["coords"]) {
        if (!v.is_string()) raise(errc::parse_error, "coords entries must be strings");
        c.push_back(rat_from_string(v.get<std::string>()));
    }
    return NFElement(F, std::move(c));
}

// ---------- univariate polynomials, rational functions, sequences ----------

inline Json unipoly_to_json(const UniPoly& f) {
    Json a = Json::array();
    for (long i = 0; i <= f.deg(); ++i) a.push_back(element_to_json(f.at(i)));
    return a;
}

inline UniPoly unipoly_from_json(const Json& j, const FieldPtr& F) {
    if (!j.is_array()) raise(errc::parse_error, "polynomial document must be an array");
    std::vector<NFElement> c;
    for (const Json& v : j) c.push_back(element_from_json(v, F));
    return UniPoly(F, std::move(c));
}

inline Json ratfunc_to_json(const RatFunc& R) {
    return Json{{"den", unipoly_to_json(R.den)},
                {"field", field_to_json(R.num.F)},
                {"num", unipoly_to_json(R.num)}};
}

inline RatFunc ratfunc_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        raise(errc::parse_error, "rational function document needs num and den");
    FieldPtr F = j.contains("field") ? field_from_json(j["field"]) : NumberField::rationals();
    return make_ratfunc(unipoly_from_json(j["num"], F), unipoly_from_json(j["den"], F));
}

inline Json exppoly_to_json(const ExpPoly& e) {
    Json terms = Json::array();
    for (const auto& t : e.terms)
        terms.push_back(Json{{"base", element_to_json(t.base)}, {"poly", unipoly_to_json(t.poly)}});
    Json corr = Json::array();
    for (const auto& [n, v] : e.corrections) corr.push_back(Json::array({n, element_to_json(v)}));
    return Json{{"corrections", corr}, {"field", field_to_json(e.F)}, {"terms", terms}};
}

inline ExpPoly exppoly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        raise(errc::parse_error, "sequence document needs a terms array");
    FieldPtr F = j.contains("field") ? field_from_json(j["field"]) : NumberField::rationals();
    std::vector<ExpTerm> terms;
    for (const Json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("poly") || !t.contains("base"))
            raise(errc::parse_error, "sequence term needs poly and base");
        terms.push_back({unipoly_from_json(t["poly"], F), element_from_json(t["base"], F)});
    }
    std::vector<std::pair<long, NFElement>> corr;
    if (j.contains("corrections")) {
        for (const Json& c : j["corrections"]) {
            if (!c.is_array() || c.size() != 2)
                raise(errc::parse_error, "corrections must be [index, value] pairs");
            corr.emplace_back(long_from_json(c[0], "correction index"),
                              element_from_json(c[1], F));
        }
    }
    return make_exppoly(F, std::move(terms), std::move(corr));
}

// ---------- Laurent data (no_root witnesses) ----------

inline Json laurent_to_json(const Laurent& f) {
    Json vars = Json::array();
    for (long i = 0; i < f.nvars; ++i) vars.push_back("X" + std::to_string(i));
    Json terms = Json::array();
    for (const auto& [ex, c] : f.terms) {
        Json e = Json::array();
        for (long long v : ex) e.push_back(v);
        terms.push_back(Json{{"coef", element_to_json(c)}, {"exp", e}});
    }
    return Json{{"terms", terms}, {"vars", vars}};
}

inline Laurent laurent_from_json(const Json& j, const FieldPtr& F) {
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        raise(errc::parse_error, "laurent document needs vars and terms");
    Laurent f = lp::zero(F, static_cast<long>(j["vars"].size()));
    for (const Json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
            raise(errc::parse_error, "laurent term needs exp and coef");
        std::vector<long long> ex;
        for (const Json& v : t["exp"]) {
            if (!v.is_number_integer()) raise(errc::parse_error, "exponents must be integers");
            ex.push_back(v.get<long long>());
        }
        if (static_cast<long>(ex.size()) != f.nvars)
            raise(errc::parse_error, "exponent arity mismatch");
        lp::insert_add(f, ex, element_from_json(t["coef"], F));
    }
    return f;
}

// ---------- group presentations ----------

inline Json presentation_to_json(const GroupPresentation& P) {
    Json gam = Json::array();
    for (const NFElement& g : P.gammas) gam.push_back(element_to_json(g));
    Json E = Json::array();
    for (const IVec& row : P.E) {
        Json r = Json::array();
        for (const BigInt& v : row) {
            if (!fits_long(v)) raise(errc::invalid_argument, "exponent too large to serialize");
            r.push_back(to_long(v));
        }
        E.push_back(r);
    }
    return Json{{"E", E}, {"N", P.N}, {"field", field_to_json(P.F)}, {"gammas", gam}};
}

inline GroupPresentation presentation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("gammas") || !j.contains("E"))
        raise(errc::parse_error, "presentation document needs N, gammas, E");
    GroupPresentation P;
    P.F = j.contains("field") ? field_from_json(j["field"]) : NumberField::rationals();
    P.N = long_from_json(j["N"], "N");
    for (const Json& g : j["gammas"]) P.gammas.push_back(element_from_json(g, P.F));
    for (const Json& row : j["E"]) {
        IVec r;
        for (const Json& v : row) r.push_back(BigInt(long_from_json(v, "exponent")));
        P.E.push_back(std::move(r));
    }
    return P;
}

// ---------- certificates ----------

inline Json certificate_to_json(const Certificate& c) {
    return Json{{"a", c.a},           {"d", c.d},       {"m", c.m},
                {"min_poly_root", c.min_poly_root},     {"n_min", c.n_min},
                {"p", c.p},           {"period", c.period}};
}

inline Certificate certificate_from_json(const Json& j) {
    if (!j.is_object()) raise(errc::parse_error, "certificate must be an object");
    for (const char* k : {"p", "min_poly_root", "d", "a", "m", "period", "n_min"})
        if (!j.contains(k)) raise(errc::parse_error, std::string("certificate needs ") + k);
    Certificate c;
    c.p = long_from_json(j["p"], "p");
    c.min_poly_root = long_from_json(j["min_poly_root"], "min_poly_root");
    c.d = long_from_json(j["d"], "d");
    c.a = long_from_json(j["a"], "a");
    c.m = long_from_json(j["m"], "m");
    c.period = long_from_json(j["period"], "period");
    c.n_min = long_from_json(j["n_min"], "n_min");
    return c;
}

} // namespace hroot
