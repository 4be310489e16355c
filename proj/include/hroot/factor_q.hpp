#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "modpoly.hpp"
#include "zpoly.hpp"

namespace hroot {
namespace zq {

// --- arithmetic on IntPoly with coefficients reduced into [0, m) ---

inline BigInt mod_pos(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

inline IntPoly mreduce(IntPoly a, const BigInt& m) {
    for (auto& c : a) c = mod_pos(c, m);
    zp::normalize(a);
    return a;
}

inline IntPoly mmul(const IntPoly& a, const IntPoly& b, const BigInt& m) {
    return mreduce(zp::mul(a, b), m);
}

inline IntPoly madd(const IntPoly& a, const IntPoly& b, const BigInt& m) {
    return mreduce(zp::add(a, b), m);
}

inline IntPoly msub(const IntPoly& a, const IntPoly& b, const BigInt& m) {
    return mreduce(zp::sub(a, b), m);
}

// divmod by a monic divisor, coefficients mod m.
inline std::pair<IntPoly, IntPoly> mdivmod_monic(IntPoly a, const IntPoly& h, const BigInt& m) {
    int dh = zp::deg(h);
    IntPoly q;
    if (zp::deg(a) >= dh) q.resize(zp::deg(a) - dh + 1);
    while (zp::deg(a) >= dh) {
        BigInt c = a.back();
        int shift = zp::deg(a) - dh;
        q[shift] = c;
        for (int i = 0; i <= dh; ++i) a[shift + i] = mod_pos(a[shift + i] - c * h[i], m);
        zp::normalize(a);
    }
    zp::normalize(q);
    return {q, a};
}

// symmetric representative in (-m/2, m/2]
inline IntPoly msym(IntPoly a, const BigInt& m) {
    BigInt half = m / 2;
    for (auto& c : a) {
        c = mod_pos(c, m);
        if (c > half) c -= m;
    }
    zp::normalize(a);
    return a;
}

inline IntPoly lift_ppoly(const PPoly& f) {
    IntPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = BigInt(static_cast<unsigned long>(f[i]));
    return r;
}

// --- Hensel lifting ---

// One quadratic step: f = g*h and s*g + t*h = 1 (mod m) with h monic become
// the same relations mod m^2.  Degrees and leading coefficients are preserved.
inline void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t,
                        const BigInt& m) {
    BigInt m2 = m * m;
    // re-pin lc(g) = lc(f) at the new modulus so the top terms cancel in e
    g = mreduce(std::move(g), m2);
    g.back() = mod_pos(f.back(), m2);
    IntPoly e = msub(mreduce(f, m2), mmul(g, h, m2), m2);
    auto [q, r] = mdivmod_monic(mmul(s, e, m2), h, m2);
    IntPoly gstar = madd(g, madd(mmul(t, e, m2), mmul(q, g, m2), m2), m2);
    IntPoly hstar = madd(h, r, m2);
    IntPoly one{BigInt(1)};
    IntPoly b = msub(madd(mmul(s, gstar, m2), mmul(t, hstar, m2), m2), one, m2);
    auto [c, d] = mdivmod_monic(mmul(s, b, m2), hstar, m2);
    s = msub(s, d, m2);
    t = msub(t, madd(mmul(t, b, m2), mmul(c, gstar, m2), m2), m2);
    g = std::move(gstar);
    h = std::move(hstar);
}

// Bezout cofactors s*g + t*h = 1 mod p for coprime g, h mod p.
inline std::pair<IntPoly, IntPoly> bezout_mod_p(const Fp& F, const PPoly& g, const PPoly& h) {
    // extended Euclid in F_p[x]
    PPoly r0 = g, r1 = h;
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = F.pdivmod(r0, r1);
        PPoly s2 = F.psub(s0, F.pmul(q, s1));
        PPoly t2 = F.psub(t0, F.pmul(q, t1));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (Fp::deg(r0) != 0) raise(errc::invalid_argument, "factors not coprime mod p");
    uint64_t iv = F.inv(r0[0]);
    return {lift_ppoly(F.pscale(s0, iv)), lift_ppoly(F.pscale(t0, iv))};
}

// Lift f = lc(f) * prod(fac) (mod p) to the same congruence mod `target`
// (a power of p), returning monic representatives of the factors.
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<PPoly>& fac,
                                        const Fp& F, const BigInt& target) {
    if (fac.size() == 1) {
        // monic representative: f * lc^{-1} mod target
        BigInt lc = mod_pos(f.back(), target);
        BigInt ilc;
        if (mpz_invert(ilc.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t()) == 0)
            raise(errc::bad_reduction, "leading coefficient not a unit");
        IntPoly r = mreduce(f, target);
        for (auto& c : r) c = mod_pos(c * ilc, target);
        return {r};
    }
    size_t half = fac.size() / 2;
    std::vector<PPoly> L(fac.begin(), fac.begin() + half);
    std::vector<PPoly> R(fac.begin() + half, fac.end());
    PPoly gp{F.reduce(f.back())}, hp{1};
    for (const auto& u : L) gp = F.pmul(gp, u);
    for (const auto& u : R) hp = F.pmul(hp, u);
    auto [s, t] = bezout_mod_p(F, gp, hp);
    IntPoly g = lift_ppoly(gp), h = lift_ppoly(hp);
    // pin lc(g) to lc(f) so the leading terms cancel exactly in every step
    BigInt m(static_cast<unsigned long>(F.p));
    g.back() = mod_pos(f.back(), m);
    zp::normalize(g);
    while (m < target) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    // every prime power >= target that m reaches is a multiple of target
    g = mreduce(std::move(g), target);
    g.back() = mod_pos(f.back(), target);
    h = mreduce(std::move(h), target);
    auto out = hensel_lift(g, L, F, target);
    auto out2 = hensel_lift(h, R, F, target);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

// --- Zassenhaus ---

inline BigInt sqrt_ceil(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    if (r * r < v) r += 1;
    return r;
}

// bound on |coeff| of lc(f) * g for any monic-over-Q divisor g of f
inline BigInt mignotte_bound(const IntPoly& f) {
    int n = zp::deg(f);
    BigInt b = pow(BigInt(2), static_cast<unsigned long>(n));
    b *= sqrt_ceil(BigInt(n + 1));
    b *= zp::max_abs_coeff(f);
    BigInt lc = f.back() >= 0 ? f.back() : BigInt(-f.back());
    b *= lc;
    return b;
}

inline bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Irreducible factors of a squarefree primitive integer polynomial, deg >= 1.
inline std::vector<IntPoly> zassenhaus(IntPoly f) {
    std::vector<IntPoly> out;
    if (zp::deg(f) == 1) {
        out.push_back(std::move(f));
        return out;
    }
    // pick an odd prime of good reduction, best modular factor count of 3
    uint64_t best_p = 0;
    std::vector<PPoly> best_fac;
    int tried = 0;
    for (uint64_t p = 3; tried < 3; p = next_prime(p)) {
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        Fp F{p};
        PPoly fp = F.from_int_poly(f);
        if (!F.squarefree_mod(fp)) continue;
        ++tried;
        auto fac = modp::factor_squarefree(F, F.monic(fp));
        if (best_p == 0 || fac.size() < best_fac.size()) {
            best_p = p;
            best_fac = std::move(fac);
        }
        if (best_fac.size() == 1) break;
    }
    Fp F{best_p};
    if (best_fac.size() == 1) {
        out.push_back(std::move(f));
        return out;
    }
    BigInt B = mignotte_bound(f);
    BigInt target(static_cast<unsigned long>(best_p));
    while (target <= 2 * B) target *= BigInt(static_cast<unsigned long>(best_p));
    std::vector<IntPoly> lifted = hensel_lift(f, best_fac, F, target);

    // subset recombination with trial division
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
    RatPoly fq = zp::from_int(f);
    int s = 1;
    while (2 * s <= static_cast<int>(alive.size())) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        bool found = false;
        do {
            IntPoly g{f.back()};
            for (int i : idx) g = mmul(g, lifted[alive[i]], target);
            g = msym(std::move(g), target);
            RatPoly gq = zp::from_int(zp::primitive(zp::from_int(g)));
            if (zp::deg(gq) < 1) continue;
            auto [q, r] = zp::divmod(fq, gq);
            if (!r.empty()) continue;
            out.push_back(zp::primitive(gq));
            fq = q;
            f = zp::primitive(fq);
            fq = zp::from_int(f);
            std::vector<int> keep;
            for (size_t i = 0; i < alive.size(); ++i)
                if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end())
                    keep.push_back(alive[i]);
            alive = std::move(keep);
            found = true;
            break;
        } while (next_combination(idx, static_cast<int>(alive.size())));
        if (!found) ++s;
    }
    if (zp::deg(f) >= 1) out.push_back(std::move(f));
    return out;
}

} // namespace zq

// Monic irreducible factors over Q with multiplicities, deterministically
// sorted by degree then coefficient sequence (highest term first).
inline std::vector<std::pair<RatPoly, int>> factor_over_Q(const RatPoly& f0) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly f = f0;
    zp::normalize(f);
    if (zp::deg(f) < 1) return out;
    for (auto& [part, mult] : zp::squarefree(f)) {
        IntPoly pi = zp::primitive(part);
        for (auto& irr : zq::zassenhaus(pi))
            out.push_back({zp::monic(zp::from_int(irr)), mult});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        for (size_t i = a.first.size(); i-- > 0;) {
            int c = cmp(a.first[i], b.first[i]);
            if (c != 0) return c < 0;
        }
        return a.second < b.second;
    });
    return out;
}

inline bool is_irreducible_over_Q(const RatPoly& f) {
    if (zp::deg(f) == 1) return true;
    if (zp::deg(f) < 1) return false;
    if (zp::deg(zp::gcd(f, zp::derivative(f))) > 0) return false; // not squarefree
    IntPoly fi = zp::primitive(f);
    // quick certificate: irreducible mod some prime of good reduction
    int tried = 0;
    for (uint64_t p = 3; tried < 8 && p < 10000; p = next_prime(p)) {
        if (mpz_divisible_ui_p(fi.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        Fp F{p};
        PPoly fp = F.from_int_poly(fi);
        if (!F.squarefree_mod(fp)) continue;
        ++tried;
        auto d = modp::ddf(F, F.monic(fp));
        if (d.size() == 1 && d[0].second == zp::deg(f)) return true;
    }
    auto fac = factor_over_Q(f);
    return fac.size() == 1 && fac[0].second == 1;
}

} // namespace hroot
