#pragma once

#include <algorithm>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace hroot {

// Dense univariate polynomials over Z and Q, coefficients ascending
// (c[0] is the constant term).  Zero polynomial is the empty vector.
using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<BigRat>;

namespace zp {

template <class P> inline void normalize(P& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class P> inline int deg(const P& p) { return static_cast<int>(p.size()) - 1; }

template <class P> inline bool is_zero(const P& p) { return p.empty(); }

template <class P> inline P add(const P& a, const P& b) {
    P r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    normalize(r);
    return r;
}

template <class P> inline P neg(P a) {
    for (auto& c : a) c = -c;
    return a;
}

template <class P> inline P sub(const P& a, const P& b) { return add(a, neg(b)); }

template <class P> inline P mul(const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

template <class P, class C> inline P scale(P a, const C& c) {
    for (auto& x : a) x *= c;
    normalize(a);
    return a;
}

template <class P> inline P derivative(const P& a) {
    if (a.size() <= 1) return {};
    P r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    normalize(r);
    return r;
}

template <class P, class C> inline C eval(const P& a, const C& x) {
    C v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * x + C(a[i]);
    return v;
}

// Quotient and remainder over Q; divisor must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) raise(errc::division_by_zero, "polynomial division by zero");
    RatPoly q;
    int db = deg(b);
    if (deg(a) >= db) q.resize(deg(a) - db + 1);
    while (deg(a) >= db) {
        BigRat c = a.back() / b.back();
        int shift = deg(a) - db;
        q[shift] = c;
        for (int i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
        normalize(a);
        if (deg(a) >= db + shift) a.resize(db + shift); // paranoid cancel of the lead
        normalize(a);
    }
    normalize(q);
    return {q, a};
}

inline RatPoly rem(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

inline RatPoly monic(RatPoly a) {
    if (a.empty()) return a;
    BigRat lc = a.back();
    for (auto& c : a) c /= lc;
    return a;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.empty()) {
        RatPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Exact division; raises if not divisible.
inline RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) raise(errc::verification_failed, "inexact polynomial division");
    return q;
}

inline RatPoly from_int(const IntPoly& a) {
    RatPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = BigRat(a[i]);
    return r;
}

// Clear denominators and content: primitive integer polynomial with positive
// leading coefficient, plus nothing else (scalar multiple of the input).
inline IntPoly primitive(const RatPoly& a) {
    if (a.empty()) return {};
    BigInt den = 1;
    for (const auto& c : a) den = lcm(den, c.get_den());
    IntPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        BigRat v = a[i] * BigRat(den);
        r[i] = v.get_num();
    }
    BigInt content = 0;
    for (const auto& c : r) content = gcd(content, c);
    if (content == 0) return {};
    if (r.back() < 0) content = -content;
    for (auto& c : r) c /= content;
    return r;
}

inline BigInt max_abs_coeff(const IntPoly& a) {
    BigInt m = 0;
    for (const auto& c : a) {
        BigInt v = c >= 0 ? c : BigInt(-c);
        if (v > m) m = v;
    }
    return m;
}

template <class P> inline P shift_up(P a, int k) { // multiply by x^k
    if (a.empty()) return a;
    P r(a.size() + k);
    for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

// p(x + s) by repeated synthetic division.
inline RatPoly taylor_shift(RatPoly p, const BigRat& s) {
    if (s == 0) return p;
    int n = deg(p);
    for (int i = 0; i <= n; ++i)
        for (int j = n - 1; j >= i; --j) p[j] += s * p[j + 1];
    return p;
}

inline RatPoly pow(const RatPoly& a, long e) {
    RatPoly r{BigRat(1)};
    RatPoly base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

// Resultant over Q by the classical PRS recursion.
inline BigRat resultant(RatPoly a, RatPoly b) {
    normalize(a);
    normalize(b);
    if (a.empty() || b.empty()) return BigRat(0);
    BigRat res = 1;
    bool swapped = false;
    while (true) {
        if (deg(b) == 0) {
            res *= hroot::pow(b.back(), deg(a));
            break;
        }
        if (deg(a) < deg(b)) {
            if ((static_cast<long>(deg(a)) * deg(b)) % 2 == 1) res = -res;
            std::swap(a, b);
            (void)swapped;
            continue;
        }
        RatPoly r = rem(a, b);
        if (r.empty()) return BigRat(0);
        res *= hroot::pow(b.back(), deg(a) - deg(r));
        if ((static_cast<long>(deg(a)) * deg(b)) % 2 == 1) res = -res;
        a = std::move(b);
        b = std::move(r);
    }
    return res;
}

// Yun's squarefree decomposition over Q: returns [(g1,1),(g2,2),...] with
// p = lc * prod gi^i, gi monic squarefree pairwise coprime.
inline std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly f = monic(p);
    if (deg(f) <= 0) return out;
    RatPoly fp = derivative(f);
    RatPoly a = gcd(f, fp);
    if (deg(a) == 0) {
        out.push_back({f, 1});
        return out;
    }
    RatPoly b = exact_div(f, a);
    RatPoly c = sub(exact_div(fp, a), derivative(b));
    int i = 1;
    while (deg(b) > 0) {
        RatPoly g = gcd(b, c);
        if (deg(g) > 0) out.push_back({monic(g), i});
        b = exact_div(b, g);
        c = sub(exact_div(c, g), derivative(b));
        ++i;
    }
    return out;
}

// Newton interpolation through distinct nodes xs: the unique polynomial of
// degree < n with p(xs[i]) = ys[i].
inline RatPoly interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys) {
    size_t n = xs.size();
    std::vector<BigRat> dd(ys); // divided differences, built in place
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    RatPoly p;
    for (size_t i = n; i-- > 0;) {
        // p <- p * (x - xs[i]) + dd[i]
        RatPoly q = shift_up(p, 1);
        p = scale(p, -xs[i]);
        p = add(p, q);
        if (p.empty()) p.resize(1);
        p[0] += dd[i];
        normalize(p);
    }
    return p;
}

// s-th cyclotomic polynomial (integer coefficients), by removing the proper
// cyclotomic divisors of x^s - 1.
inline RatPoly cyclotomic(long s) {
    RatPoly num(static_cast<size_t>(s) + 1);
    num[0] = -1;
    num[static_cast<size_t>(s)] = 1;
    for (long d = 1; d < s; ++d) {
        if (s % d == 0) {
            RatPoly cd = cyclotomic(d); // s is tiny here; recursion is fine
            num = exact_div(num, cd);
        }
    }
    return num;
}

} // namespace zp
} // namespace hroot
