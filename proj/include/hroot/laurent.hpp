#pragma once

#include <map>
#include <vector>

#include "number_field.hpp"

namespace hroot {

// Multivariate Laurent polynomial over a number field.  Variable 0 is the
// ordinary (non-invertible) one; the rest may carry negative exponents.
// Term keys are full exponent vectors of length nvars; coefficients are
// never zero.
struct Laurent {
    FieldPtr F;
    size_t nvars = 0;
    std::map<std::vector<long long>, NFElement> terms;
};

namespace lp {

inline Laurent zero(FieldPtr F, size_t nvars) { return Laurent{std::move(F), nvars, {}}; }

inline void insert_add(Laurent& a, const std::vector<long long>& e, const NFElement& c) {
    if (e.size() != a.nvars) raise(errc::arity_mismatch, "exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = a.terms.find(e);
    if (it == a.terms.end()) {
        a.terms.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) a.terms.erase(it);
    }
}

inline Laurent monomial(FieldPtr F, size_t nvars, const std::vector<long long>& e,
                        const NFElement& c) {
    Laurent a = zero(std::move(F), nvars);
    insert_add(a, e, c);
    return a;
}

inline Laurent constant(FieldPtr F, size_t nvars, const NFElement& c) {
    return monomial(F, nvars, std::vector<long long>(nvars, 0), c);
}

inline bool is_zero(const Laurent& a) { return a.terms.empty(); }

inline void check_compat(const Laurent& a, const Laurent& b) {
    check_same_field(a.F, b.F);
    if (a.nvars != b.nvars) raise(errc::arity_mismatch, "variable count mismatch");
}

inline Laurent add(const Laurent& a, const Laurent& b) {
    check_compat(a, b);
    Laurent r = a;
    for (const auto& [e, c] : b.terms) insert_add(r, e, c);
    return r;
}

inline Laurent neg(Laurent a) {
    for (auto& [e, c] : a.terms) c = -c;
    return a;
}

inline Laurent sub(const Laurent& a, const Laurent& b) { return add(a, neg(b)); }

inline Laurent scale(Laurent a, const NFElement& s) {
    if (s.is_zero()) return zero(a.F, a.nvars);
    for (auto& [e, c] : a.terms) c *= s;
    return a;
}

// multiply by the monomial X^by
inline Laurent shift(const Laurent& a, const std::vector<long long>& by) {
    if (by.size() != a.nvars) raise(errc::arity_mismatch, "exponent arity mismatch");
    Laurent r = zero(a.F, a.nvars);
    for (const auto& [e, c] : a.terms) {
        std::vector<long long> ne = e;
        for (size_t i = 0; i < ne.size(); ++i) ne[i] += by[i];
        r.terms.emplace(std::move(ne), c);
    }
    return r;
}

inline Laurent mul(const Laurent& a, const Laurent& b) {
    check_compat(a, b);
    Laurent r = zero(a.F, a.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<long long> e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            insert_add(r, e, ca * cb);
        }
    return r;
}

inline Laurent pow(const Laurent& a, long k) {
    if (k < 0) raise(errc::invalid_argument, "negative power of a Laurent polynomial");
    Laurent r = constant(a.F, a.nvars, NFElement::one(a.F));
    Laurent base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return r;
}

// componentwise minimum of the exponent vectors
inline std::vector<long long> min_exponents(const Laurent& a) {
    if (is_zero(a)) raise(errc::invalid_argument, "min exponents of zero");
    std::vector<long long> m = a.terms.begin()->first;
    for (const auto& [e, c] : a.terms)
        for (size_t i = 0; i < m.size(); ++i)
            if (e[i] < m[i]) m[i] = e[i];
    return m;
}

inline std::vector<long long> max_exponents(const Laurent& a) {
    if (is_zero(a)) raise(errc::invalid_argument, "max exponents of zero");
    std::vector<long long> m = a.terms.begin()->first;
    for (const auto& [e, c] : a.terms)
        for (size_t i = 0; i < m.size(); ++i)
            if (e[i] > m[i]) m[i] = e[i];
    return m;
}

// apply fn to every coefficient (e.g. an embedding into a larger field)
template <typename Fn>
inline Laurent map_coeffs(const Laurent& a, FieldPtr to, Fn&& fn) {
    Laurent r = zero(std::move(to), a.nvars);
    for (const auto& [e, c] : a.terms) insert_add(r, e, fn(c));
    return r;
}

} // namespace lp

inline bool operator==(const Laurent& a, const Laurent& b) {
    lp::check_compat(a, b);
    if (a.terms.size() != b.terms.size()) return false;
    auto it = a.terms.begin(), jt = b.terms.begin();
    for (; it != a.terms.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}
inline bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

} // namespace hroot
