#pragma once

#include <utility>
#include <vector>

#include "number_field.hpp"

namespace hroot {

// Dense univariate polynomial over a number field, coefficients ascending.
struct UniPoly {
    FieldPtr F;
    std::vector<NFElement> c;

    explicit UniPoly(FieldPtr f) : F(std::move(f)) {}
    UniPoly(FieldPtr f, std::vector<NFElement> cs) : F(std::move(f)), c(std::move(cs)) {
        normalize();
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    NFElement at(size_t i) const {
        return i < c.size() ? c[i] : NFElement::zero(F);
    }
    NFElement lc() const { return c.back(); }

    static UniPoly zero(FieldPtr f) { return UniPoly(std::move(f)); }
    static UniPoly constant(FieldPtr f, NFElement v) {
        UniPoly r(std::move(f));
        r.c.push_back(std::move(v));
        r.normalize();
        return r;
    }
    static UniPoly x(FieldPtr f) {
        UniPoly r(f);
        r.c = {NFElement::zero(f), NFElement::one(f)};
        return r;
    }
    // x - a
    static UniPoly x_minus(const NFElement& a) {
        UniPoly r(a.field());
        r.c = {-a, NFElement::one(a.field())};
        return r;
    }
    static UniPoly from_rat(FieldPtr f, const RatPoly& p) {
        UniPoly r(f);
        r.c.reserve(p.size());
        for (const auto& q : p) r.c.push_back(NFElement::of(f, q));
        r.normalize();
        return r;
    }
    // valid only when every coefficient is rational
    RatPoly to_rat() const {
        RatPoly r(c.size());
        for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].to_rational();
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }
};

namespace up {

inline UniPoly add(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.F);
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) r.c.push_back(a.at(i) + b.at(i));
    r.normalize();
    return r;
}

inline UniPoly neg(UniPoly a) {
    for (auto& v : a.c) v = -v;
    return a;
}

inline UniPoly sub(const UniPoly& a, const UniPoly& b) { return add(a, neg(b)); }

inline UniPoly mul(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.F);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, NFElement::zero(a.F));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

inline UniPoly scale(UniPoly a, const NFElement& v) {
    for (auto& x : a.c) x *= v;
    a.normalize();
    return a;
}

inline UniPoly monic(const UniPoly& a) {
    if (a.is_zero() || a.lc().is_one()) return a;
    return scale(a, a.lc().inv());
}

inline std::pair<UniPoly, UniPoly> divmod(UniPoly a, const UniPoly& b) {
    if (b.is_zero()) raise(errc::division_by_zero, "polynomial division by zero");
    UniPoly q(a.F);
    int db = b.deg();
    if (a.deg() >= db) q.c.assign(a.deg() - db + 1, NFElement::zero(a.F));
    NFElement ilc = b.lc().inv();
    while (a.deg() >= db) {
        NFElement t = a.lc() * ilc;
        int shift = a.deg() - db;
        q.c[shift] = t;
        for (int i = 0; i <= db; ++i) a.c[shift + i] -= t * b.c[i];
        a.normalize();
    }
    q.normalize();
    return {q, a};
}

inline UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) raise(errc::verification_failed, "inexact polynomial division");
    return q;
}

inline UniPoly gcd_poly(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline UniPoly derivative(const UniPoly& a) {
    UniPoly r(a.F);
    if (a.c.size() <= 1) return r;
    r.c.reserve(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c.push_back(a.c[i] * BigRat(static_cast<long>(i)));
    r.normalize();
    return r;
}

inline NFElement eval(const UniPoly& a, const NFElement& x) {
    NFElement v = NFElement::zero(a.F);
    for (size_t i = a.c.size(); i-- > 0;) v = v * x + a.c[i];
    return v;
}

inline UniPoly pow(const UniPoly& a, long e) {
    UniPoly r = UniPoly::constant(a.F, NFElement::one(a.F));
    UniPoly b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

// p(q(x))
inline UniPoly compose(const UniPoly& p, const UniPoly& q) {
    UniPoly r = UniPoly::zero(p.F);
    for (size_t i = p.c.size(); i-- > 0;)
        r = add(mul(r, q), UniPoly::constant(p.F, p.c[i]));
    return r;
}

// Yun squarefree decomposition; parts monic, p = lc * prod part^mult.
inline std::vector<std::pair<UniPoly, int>> squarefree(const UniPoly& p) {
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly f = monic(p);
    if (f.deg() <= 0) return out;
    UniPoly fp = derivative(f);
    UniPoly a = gcd_poly(f, fp);
    if (a.deg() == 0) {
        out.push_back({f, 1});
        return out;
    }
    UniPoly b = exact_div(f, a);
    UniPoly cc = sub(exact_div(fp, a), derivative(b));
    int i = 1;
    while (b.deg() > 0) {
        UniPoly g = gcd_poly(b, cc);
        if (g.deg() > 0) out.push_back({monic(g), i});
        b = exact_div(b, g);
        cc = sub(exact_div(cc, g), derivative(b));
        ++i;
    }
    return out;
}

// deterministic order: degree, then coefficients from the top
inline int cmp(const UniPoly& a, const UniPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
    for (size_t i = a.c.size(); i-- > 0;) {
        int c = NFElement::cmp(a.c[i], b.c[i]);
        if (c != 0) return c;
    }
    return 0;
}

} // namespace up
} // namespace hroot
