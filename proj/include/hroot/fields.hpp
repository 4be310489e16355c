#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "factor_nf.hpp"
#include "factor_q.hpp"
#include "unipoly.hpp"

namespace hroot {

// Embedding of one number field into another, determined by the image of the
// source generator.
struct FieldHom {
    FieldPtr from, to;
    NFElement gen_image;

    static FieldHom identity(FieldPtr F) {
        NFElement g = NFElement::gen(F);
        return {F, F, std::move(g)};
    }

    NFElement operator()(const NFElement& a) const {
        check_same_field(a.field(), from);
        NFElement v = NFElement::zero(to);
        const RatPoly& c = a.coords();
        for (size_t i = c.size(); i-- > 0;) v = v * gen_image + NFElement::of(to, c[i]);
        return v;
    }

    UniPoly map(const UniPoly& p) const {
        UniPoly r(to);
        r.c.reserve(p.c.size());
        for (const auto& v : p.c) r.c.push_back((*this)(v));
        r.normalize();
        return r;
    }

    // composition: first this, then g
    FieldHom then(const FieldHom& g) const {
        if (!NumberField::same(*to, *g.from)) raise(errc::field_mismatch, "homs do not compose");
        return {from, g.to, g(gen_image)};
    }
};

struct AdjoinResult {
    FieldPtr field;    // the (possibly) larger field L
    FieldHom embed;    // K -> L
    NFElement root;    // root of the given polynomial, in L
    bool extended;     // false when the root already lay in K
};

namespace detail {

// residue degrees of several good primes, cached for the torsion scan
struct ResidueDegrees {
    uint64_t p;
    std::vector<int> degs;
};

inline long ord_mod(long p, long s) {
    long r = p % s, o = 1;
    while (r != 1) {
        r = static_cast<long>((static_cast<long long>(r) * (p % s)) % s);
        ++o;
        if (o > s) raise(errc::verification_failed, "order computation runaway");
    }
    return o;
}

inline long compute_torsion(const FieldPtr& K) {
    int n = K->degree();
    if (n % 2 == 1) return 2; // phi(s) | n odd forces phi(s) = 1
    // monic integral model: L^(n-1) f(x/L) for the primitive f with lc L
    const IntPoly& f = K->min_poly_int();
    BigInt L = f.back();
    IntPoly fm(f.size());
    BigInt sc(1);
    for (size_t i = f.size(); i-- > 0;) {
        fm[i] = f[i] * sc;
        if (i > 0) sc *= L;
    }
    RatPoly fmq = zp::from_int(fm);
    BigRat dq = zp::resultant(fmq, zp::derivative(fmq));
    BigInt disc = dq.get_num(); // monic: already integral; sign irrelevant here

    std::vector<detail::ResidueDegrees> cache;
    long smax = 2L * n * n;
    for (uint64_t p = 3; static_cast<int>(cache.size()) < 8 && p < 20000; p = next_prime(p)) {
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        Fp F{p};
        PPoly fp = F.from_int_poly(fm);
        if (!F.squarefree_mod(fp)) continue;
        detail::ResidueDegrees rd{p, {}};
        for (auto& [g, d] : modp::ddf(F, F.monic(fp))) {
            int count = Fp::deg(g) / d;
            for (int i = 0; i < count; ++i) rd.degs.push_back(d);
        }
        cache.push_back(std::move(rd));
    }

    for (long s = smax - (smax % 2); s >= 4; s -= 2) {
        long ph = euler_phi(s);
        if (n % ph != 0) continue;
        bool possible = true;
        for (const auto& rd : cache) {
            if (s % static_cast<long>(rd.p) == 0) continue;
            long o = detail::ord_mod(static_cast<long>(rd.p), s);
            for (int d : rd.degs)
                if (d % o != 0) { possible = false; break; }
            if (!possible) break;
        }
        if (!possible) continue;
        RatPoly phi = zp::cyclotomic(s);
        if (!roots_in_field(UniPoly::from_rat(K, phi)).empty()) return s;
    }
    return 2;
}

} // namespace detail

inline FieldPtr NumberField::make(RatPoly min_poly, const std::string& var,
                                  bool trusted_irreducible) {
    zp::normalize(min_poly);
    if (zp::deg(min_poly) < 1) raise(errc::invalid_argument, "minimal polynomial is constant");
    min_poly = zp::monic(std::move(min_poly));
    if (zp::deg(min_poly) == 1) return rationals(); // every degree-1 field is Q
    if (!trusted_irreducible && !is_irreducible_over_Q(min_poly))
        raise(errc::reducible, "modulus is reducible over Q");
    FieldPtr provisional(new NumberField(min_poly, var, 0));
    long w = detail::compute_torsion(provisional);
    return FieldPtr(new NumberField(std::move(min_poly), var, w));
}

// Extend K by a root of a monic polynomial irreducible over K.
inline AdjoinResult adjoin_root(const FieldPtr& K, const UniPoly& f) {
    if (f.deg() < 1) raise(errc::invalid_argument, "cannot adjoin a root of a constant");
    if (f.deg() == 1) {
        NFElement r = -(f.c[0] / f.c[1]);
        return {K, FieldHom::identity(K), std::move(r), false};
    }
    if (K->is_rational_field()) {
        FieldPtr L = NumberField::make(up::monic(f).to_rat(), "t", true);
        FieldHom emb{K, L, NFElement::one(L)}; // gen of Q is 1
        NFElement root = NFElement::gen(L);
        return {L, std::move(emb), std::move(root), true};
    }
    int n = K->degree(), e = f.deg();
    size_t N = static_cast<size_t>(n) * e;
    UniPoly fm = up::monic(f);
    NFElement theta = NFElement::gen(K);
    for (long ci = 1;; ++ci) {
        BigRat c((ci % 2 == 1) ? (ci + 1) / 2 : -ci / 2); // 1, -1, 2, -2, ...
        // xi = y + c*theta in A = K[y]/(f); flatten A over Q as theta^i y^j
        UniPoly xi(K);
        xi.c = {theta * c, NFElement::one(K)};
        auto flatten = [&](const UniPoly& a) {
            QVec v(N);
            for (int j = 0; j < e; ++j) {
                if (j >= static_cast<int>(a.c.size())) break;
                const RatPoly& cc = a.c[j].coords();
                for (size_t i = 0; i < cc.size(); ++i) v[static_cast<size_t>(j) * n + i] = cc[i];
            }
            return v;
        };
        la::RowReducer rr(N);
        std::vector<QVec> powvecs;
        UniPoly pw = UniPoly::constant(K, NFElement::one(K));
        RatPoly mu;
        bool primitive = true;
        for (size_t k = 0; k <= N; ++k) {
            QVec v = flatten(pw);
            powvecs.push_back(v);
            if (auto dep = rr.feed(std::move(v))) {
                if (dep->size() != N + 1) primitive = false; // early dependency
                else mu.assign(dep->begin(), dep->end());
                break;
            }
            pw = up::rem(up::mul(pw, xi), fm);
        }
        if (!primitive) continue;
        zp::normalize(mu);
        FieldPtr L = NumberField::make(mu, "t", true);
        // express theta and y in the xi-power basis: solve transpose systems
        QMat Mt(N, QVec(N));
        for (size_t r = 0; r < N; ++r)
            for (size_t cidx = 0; cidx < N; ++cidx) Mt[cidx][r] = powvecs[r][cidx];
        QVec etheta(N), ey(N);
        etheta[1] = 1;                       // theta = basis index (i=1, j=0)
        ey[static_cast<size_t>(n)] = 1;      // y     = basis index (i=0, j=1)
        auto a = la::solve(Mt, etheta);
        auto b = la::solve(Mt, ey);
        if (!a || !b) raise(errc::verification_failed, "power basis not invertible");
        RatPoly ap(a->begin(), a->end()), bp(b->begin(), b->end());
        zp::normalize(ap);
        zp::normalize(bp);
        FieldHom emb{K, L, NFElement(L, std::move(ap))};
        NFElement root(L, std::move(bp));
        if (!up::eval(emb.map(fm), root).is_zero())
            raise(errc::verification_failed, "adjoined root fails its polynomial");
        return {L, std::move(emb), std::move(root), true};
    }
}

// Extend K far enough to contain a root of g (any nonconstant polynomial
// over K): factor, adjoin a root of the first irreducible factor.
inline AdjoinResult extend_by_root_of(const FieldPtr& K, const UniPoly& g) {
    auto fac = uni_factor_NF(g);
    if (fac.empty()) raise(errc::invalid_argument, "no factor to adjoin");
    return adjoin_root(K, fac[0].first);
}

} // namespace hroot
