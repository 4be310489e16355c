#pragma once

#include <optional>
#include <vector>

#include "laurent.hpp"
#include "unipoly.hpp"

namespace hroot {

// d-th root of a monic univariate polynomial, when one exists.  The root is
// monic and unique, and its coefficients stay in the coefficient field: they
// are produced by a rational recurrence from the input.
inline std::optional<UniPoly> uni_dth_root(const UniPoly& u, long d) {
    if (d < 1) raise(errc::invalid_argument, "root exponent must be positive");
    if (u.deg() < 0) return std::nullopt;
    if (!u.lc().is_one()) raise(errc::invalid_argument, "monic polynomial required");
    if (d == 1) return u;
    long n = u.deg();
    if (n % d != 0) return std::nullopt;
    long m = n / d;
    const FieldPtr& F = u.F;
    // reversed coefficients: v(x) = x^n u(1/x), v0 = 1
    std::vector<NFElement> v(n + 1, NFElement::zero(F));
    for (long i = 0; i <= n; ++i) v[i] = u.at(n - i);
    // w = v^(1/d) as a power series, from d v w' = v' w
    std::vector<NFElement> w(m + 1, NFElement::zero(F));
    w[0] = NFElement::one(F);
    for (long k = 0; k < m; ++k) {
        NFElement acc = NFElement::zero(F);
        for (long i = 0; i <= k; ++i) acc += v[i + 1] * BigRat(i + 1) * w[k - i];
        for (long i = 1; i <= k; ++i) acc -= v[i] * BigRat(d * (k - i + 1)) * w[k - i + 1];
        w[k + 1] = acc * rat(BigInt(1), BigInt(d) * (k + 1));
    }
    UniPoly h(F);
    h.c.assign(m + 1, NFElement::zero(F));
    for (long i = 0; i <= m; ++i) h.c[i] = w[m - i];
    h.normalize();
    if (!(up::pow(h, d) == u)) return std::nullopt;
    return h;
}

// ---------- Kronecker substitution between Laurent and univariate ----------

namespace lp {

// pack with base M: X_0^(e0) ... X_k^(ek) -> t^(e0 + e1 M + ... + ek M^k).
// All exponents must lie in [0, M).
inline UniPoly kron_pack(const Laurent& g, long long M) {
    BigInt span = hroot::pow(BigInt(static_cast<long>(M)), static_cast<unsigned long>(g.nvars));
    if (span > BigInt(1) << 20) raise(errc::bound_exceeded, "packed degree too large");
    size_t len = span.get_ui();
    std::vector<NFElement> c(len, NFElement::zero(g.F));
    for (const auto& [e, v] : g.terms) {
        unsigned long long idx = 0, base = 1;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= M) raise(errc::invalid_argument, "exponent out of pack range");
            idx += static_cast<unsigned long long>(e[i]) * base;
            base *= static_cast<unsigned long long>(M);
        }
        c[idx] = v;
    }
    UniPoly p{g.F, std::move(c)};
    p.normalize();
    return p;
}

inline Laurent kron_unpack(const UniPoly& p, size_t nvars, long long M) {
    Laurent g = zero(p.F, nvars);
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i].is_zero()) continue;
        std::vector<long long> e(nvars);
        unsigned long long idx = i;
        for (size_t j = 0; j < nvars; ++j) {
            e[j] = static_cast<long long>(idx % static_cast<unsigned long long>(M));
            idx /= static_cast<unsigned long long>(M);
        }
        if (idx != 0) raise(errc::invalid_argument, "packed index out of range");
        insert_add(g, e, p.c[i]);
    }
    return g;
}

} // namespace lp

// f = c * X^shift * root^d with root having zero minimum exponent in every
// variable and leading coefficient 1 in the packed order.  The shift on
// variable 0 must be divisible by d, since that variable is not invertible.
struct MonomialPower {
    std::vector<long long> shift;
    NFElement unit;
    Laurent root;
};

inline std::optional<MonomialPower> monomial_power_decompose(const Laurent& f, long d) {
    if (d < 1) raise(errc::invalid_argument, "root exponent must be positive");
    if (lp::is_zero(f)) raise(errc::invalid_argument, "decomposition of zero");
    std::vector<long long> mins = lp::min_exponents(f);
    if (mins[0] % d != 0) return std::nullopt;
    std::vector<long long> back = mins;
    for (auto& x : back) x = -x;
    Laurent g = lp::shift(f, back);
    std::vector<long long> degs = lp::max_exponents(g);
    long long M = 1;
    for (long long dv : degs) {
        if (dv % d != 0) return std::nullopt;
        if (dv >= M) M = dv + 1;
    }
    UniPoly packed = lp::kron_pack(g, M);
    NFElement c = packed.lc();
    auto h = uni_dth_root(up::monic(packed), d);
    if (!h) return std::nullopt;
    Laurent H = lp::kron_unpack(*h, f.nvars, M);
    if (!(lp::scale(lp::pow(H, d), c) == g)) return std::nullopt;
    return MonomialPower{std::move(mins), std::move(c), std::move(H)};
}

} // namespace hroot
