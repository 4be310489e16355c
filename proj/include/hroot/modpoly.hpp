#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "zpoly.hpp"

namespace hroot {

// Arithmetic in F_p[x] for machine-word p (p < 2^62), used by the rational
// factorizer and by certificate reduction.  Coefficients ascending.
using PPoly = std::vector<uint64_t>;

struct Fp {
    uint64_t p;

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const {
        if (a == 0) raise(errc::division_by_zero, "inverse of 0 mod p");
        return pow(a % p, p - 2); // p prime
    }
    uint64_t reduce(const BigInt& v) const {
        BigInt m = v % BigInt(static_cast<unsigned long>(p));
        if (m < 0) m += BigInt(static_cast<unsigned long>(p));
        return m.get_ui();
    }
    // Reduces a rational; denominator must be a unit mod p.
    uint64_t reduce(const BigRat& v) const {
        uint64_t den = reduce(BigInt(v.get_den()));
        if (den == 0) raise(errc::bad_reduction, "denominator vanishes mod p");
        return mul(reduce(BigInt(v.get_num())), inv(den));
    }

    void normalize(PPoly& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static int deg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

    PPoly from_int_poly(const IntPoly& f) const {
        PPoly r(f.size());
        for (size_t i = 0; i < f.size(); ++i) r[i] = reduce(f[i]);
        normalize(r);
        return r;
    }

    PPoly padd(const PPoly& a, const PPoly& b) const {
        PPoly r(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
        normalize(r);
        return r;
    }
    PPoly psub(const PPoly& a, const PPoly& b) const {
        PPoly r(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        normalize(r);
        return r;
    }
    PPoly pmul(const PPoly& a, const PPoly& b) const {
        if (a.empty() || b.empty()) return {};
        PPoly r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
        normalize(r);
        return r;
    }
    PPoly pscale(PPoly a, uint64_t c) const {
        for (auto& x : a) x = mul(x, c);
        normalize(a);
        return a;
    }
    PPoly monic(PPoly a) const {
        normalize(a);
        if (a.empty() || a.back() == 1) return a;
        uint64_t iv = inv(a.back());
        return pscale(std::move(a), iv);
    }

    std::pair<PPoly, PPoly> pdivmod(PPoly a, const PPoly& b) const {
        if (b.empty()) raise(errc::division_by_zero, "mod-p division by zero");
        int db = deg(b);
        uint64_t binv = inv(b.back());
        PPoly q;
        if (deg(a) >= db) q.assign(deg(a) - db + 1, 0);
        while (deg(a) >= db) {
            uint64_t c = mul(a.back(), binv);
            int shift = deg(a) - db;
            q[shift] = c;
            for (int i = 0; i <= db; ++i) a[shift + i] = sub(a[shift + i], mul(c, b[i]));
            normalize(a);
        }
        normalize(q);
        return {q, a};
    }
    PPoly prem(const PPoly& a, const PPoly& b) const { return pdivmod(a, b).second; }

    PPoly pgcd(PPoly a, PPoly b) const {
        while (!b.empty()) {
            PPoly r = prem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(std::move(a));
    }

    PPoly pderiv(const PPoly& a) const {
        if (a.size() <= 1) return {};
        PPoly r(a.size() - 1);
        for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
        normalize(r);
        return r;
    }

    uint64_t peval(const PPoly& a, uint64_t x) const {
        uint64_t v = 0;
        for (size_t i = a.size(); i-- > 0;) v = add(mul(v, x), a[i]);
        return v;
    }

    // g^e mod f, e an arbitrary nonneg integer.
    PPoly powmod(PPoly g, BigInt e, const PPoly& f) const {
        PPoly r{1};
        g = prem(g, f);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = prem(pmul(r, g), f);
            g = prem(pmul(g, g), f);
            e >>= 1;
        }
        return r;
    }

    bool squarefree_mod(const PPoly& f) const {
        if (deg(f) <= 0) return false;
        return deg(pgcd(f, pderiv(f))) == 0;
    }
};

namespace modp {

// Distinct-degree factorization of a monic squarefree f: [(g_d, d)] with g_d
// the product of the irreducible factors of degree exactly d.
inline std::vector<std::pair<PPoly, int>> ddf(const Fp& F, PPoly f) {
    std::vector<std::pair<PPoly, int>> out;
    f = F.monic(std::move(f));
    PPoly h{0, 1}; // x
    PPoly xp = h;
    int d = 0;
    while (Fp::deg(f) > 0) {
        ++d;
        if (2 * d > Fp::deg(f)) {
            out.push_back({f, Fp::deg(f)});
            break;
        }
        xp = F.powmod(std::move(xp), BigInt(static_cast<unsigned long>(F.p)), f);
        PPoly g = F.pgcd(f, F.psub(xp, h));
        if (Fp::deg(g) > 0) {
            out.push_back({g, d});
            f = F.pdivmod(f, g).first;
            xp = F.prem(std::move(xp), f);
        }
    }
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus, odd p) of a monic squarefree f
// whose irreducible factors all have degree d.  Deterministic: the random
// stream is seeded from (p, coefficients of f).
inline void edf(const Fp& F, const PPoly& f, int d, std::vector<PPoly>& out) {
    int n = Fp::deg(f);
    if (n == d) {
        out.push_back(F.monic(f));
        return;
    }
    if (F.p == 2) raise(errc::invalid_argument, "equal-degree split needs odd p");
    uint64_t seed = F.p * 0x9e3779b97f4a7c15ULL + 1;
    for (uint64_t c : f) seed ^= c + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    SplitMix64 rng(seed);
    BigInt e = (pow(BigInt(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        PPoly a(static_cast<size_t>(n), 0);
        for (auto& c : a) c = rng.next() % F.p;
        F.normalize(a);
        if (Fp::deg(a) < 1) continue;
        PPoly g = F.pgcd(f, a);
        if (Fp::deg(g) == 0) {
            PPoly b = F.powmod(a, e, f);
            if (b.empty()) continue;
            b[0] = F.sub(b[0], 1);
            F.normalize(b);
            g = F.pgcd(f, b);
        }
        if (Fp::deg(g) > 0 && Fp::deg(g) < n) {
            edf(F, g, d, out);
            edf(F, F.pdivmod(f, g).first, d, out);
            return;
        }
    }
}

// Full factorization of monic squarefree f over F_p (odd p unless f splits by
// ddf alone).  Sorted by (degree, coefficient sequence) for determinism.
inline std::vector<PPoly> factor_squarefree(const Fp& F, const PPoly& f) {
    std::vector<PPoly> out;
    for (auto& [g, d] : ddf(F, f)) {
        if (Fp::deg(g) == d) out.push_back(F.monic(g));
        else edf(F, g, d, out);
    }
    std::sort(out.begin(), out.end(), [](const PPoly& a, const PPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// Roots of f in F_p, ascending.
inline std::vector<uint64_t> roots(const Fp& F, const PPoly& f0) {
    PPoly f = F.monic(f0);
    if (Fp::deg(f) <= 0) return {};
    // restrict to the product of linear factors: gcd(f, x^p - x)
    PPoly x{0, 1};
    PPoly xp = F.powmod(x, BigInt(static_cast<unsigned long>(F.p)), f);
    PPoly lin = F.pgcd(f, F.psub(xp, x));
    std::vector<uint64_t> out;
    if (Fp::deg(lin) <= 0) return out;
    if (F.p < 1024) { // small p: direct scan is cheaper and works for p = 2
        for (uint64_t r = 0; r < F.p; ++r)
            if (F.peval(lin, r) == 0) out.push_back(r);
        return out;
    }
    std::vector<PPoly> facs;
    edf(F, lin, 1, facs);
    for (const auto& g : facs) out.push_back(F.sub(0, g[0]));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace modp
} // namespace hroot
