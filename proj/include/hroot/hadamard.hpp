#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "exppoly.hpp"
#include "multgroup.hpp"
#include "power.hpp"

namespace hroot {

// One field extension step: root satisfies the requested polynomial over
// field, embed carries the previous field in.
struct TowerStep {
    FieldPtr field;
    FieldHom embed;
    NFElement root;
    bool extended = false;
};

namespace hd {

// Canonical root supplier: prefer a root already in the field (the largest
// under the coordinate order), otherwise adjoin one from the first
// irreducible factor.
inline TowerStep root_of(const FieldPtr& L, const UniPoly& f) {
    auto rts = roots_in_field(f);
    if (!rts.empty()) return {L, FieldHom::identity(L), rts.back().first, false};
    AdjoinResult ext = extend_by_root_of(L, f);
    return {ext.field, ext.embed, ext.root, ext.extended};
}

inline UniPoly radical_poly(const FieldPtr& L, const NFElement& x, long d) {
    UniPoly f(L);
    f.c.assign(static_cast<size_t>(d) + 1, NFElement::zero(L));
    f.c[0] = -x;
    f.c[static_cast<size_t>(d)] = NFElement::one(L);
    f.normalize();
    return f;
}

inline UniPoly x_power(const FieldPtr& L, long k, const NFElement& coeff) {
    UniPoly p(L);
    p.c.assign(static_cast<size_t>(k) + 1, NFElement::zero(L));
    p.c[static_cast<size_t>(k)] = coeff;
    p.normalize();
    return p;
}

// e(n - r) as an exponential polynomial in n
inline ExpPoly shift_arg(const ExpPoly& e, long r) {
    if (!e.corrections.empty()) raise(errc::invalid_argument, "cannot shift corrections");
    if (r == 0) return e;
    UniPoly lin(e.F);
    lin.c = {NFElement::of(e.F, -r), NFElement::one(e.F)};
    std::vector<ExpTerm> terms;
    for (const auto& t : e.terms)
        terms.push_back({up::scale(up::compose(t.poly, lin), t.base.pow(-r)), t.base});
    return make_exppoly(e.F, std::move(terms));
}

// indicator of N | (n - r): (1/N) sum_j zeta^{-jr} (zeta^j)^n
inline ExpPoly phi_shift(const FieldPtr& L, const NFElement& zeta, long N, long r) {
    NFElement invN = NFElement::of(L, rat(BigInt(1), BigInt(N)));
    std::vector<ExpTerm> terms;
    for (long j = 0; j < N; ++j) {
        NFElement coeff = invN * zeta.pow(-j * r);
        UniPoly p(L);
        p.c = {coeff};
        p.normalize();
        terms.push_back({std::move(p), zeta.pow(j)});
    }
    return make_exppoly(L, std::move(terms));
}

} // namespace hd

// Y^d = x solved in K itself; the canonical root is the largest one.
inline std::optional<NFElement> is_dth_power_in_K(const NFElement& x, long d) {
    if (d < 1) raise(errc::invalid_argument, "root exponent must be positive");
    if (x.is_zero()) return NFElement::zero(x.field());
    auto rts = roots_in_field(hd::radical_poly(x.field(), x, d));
    if (rts.empty()) return std::nullopt;
    return rts.back().first;
}

struct SliceData {
    ExpPoly b_r;            // b_r(n) = b(r + Nn)
    GroupPresentation pres; // shared presentation of the N-th power bases
    Laurent f_r;            // encoding of b_r under pres
};

struct SliceDecomposition {
    long N = 1;
    std::vector<SliceData> slices;
};

// Restrict to the N progressions n = r + Nm, N the torsion exponent: the
// slice bases are N-th powers and generate a torsion-free group, with equal
// powers merged.
inline SliceDecomposition split_progressions(const ExpPoly& b, const Budgets& budgets = Budgets{}) {
    if (!b.corrections.empty())
        raise(errc::invalid_argument, "corrections must be handled before splitting");
    const FieldPtr& F = b.F;
    if (b.terms.empty()) {
        long N = F->torsion_order();
        SliceDecomposition out;
        out.N = N;
        GroupPresentation P{F, N, {}, {}};
        for (long r = 0; r < N; ++r)
            out.slices.push_back({make_exppoly(F, {}), P, lp::zero(F, 1)});
        return out;
    }
    std::vector<NFElement> betas;
    for (const auto& t : b.terms) betas.push_back(t.base);
    GroupPresentation P = free_presentation(betas, budgets);
    long N = P.N;
    SliceDecomposition out;
    out.N = N;
    for (long r = 0; r < N; ++r) {
        UniPoly lin(F);
        lin.c = {NFElement::of(F, r), NFElement::of(F, N)};
        std::vector<ExpTerm> terms;
        for (const auto& t : b.terms)
            terms.push_back(
                {up::scale(up::compose(t.poly, lin), t.base.pow(r)), t.base.pow(N)});
        ExpPoly br = make_exppoly(F, std::move(terms));
        for (long n = 0; n <= 8; ++n)
            if (!(exppoly_eval(br, n) == exppoly_eval(b, r + N * n)))
                raise(errc::verification_failed, "slice disagrees with the sequence");
        Laurent fr = encode_laurent(br, P);
        out.slices.push_back({std::move(br), P, std::move(fr)});
    }
    return out;
}

// Multiplicative data of one slice root: f = c * X0^(d*t0) * X^b * H^d, so
// the root is s * T^t0 * alpha^T * H(T, gamma^T) once s^d = c and
// alpha^d = gamma^b are adjoined.
struct SlicePower {
    IVec b;        // group exponent vector of the monomial part
    long t0 = 0;   // X0 shift divided by d
    NFElement c;   // unit constant
    Laurent H;     // root part, minimum exponent zero in every variable
    NFElement gb;  // gamma^b evaluated in the presentation's field
};

inline std::optional<SlicePower> slice_root(const Laurent& f, const GroupPresentation& P,
                                            long d) {
    if (lp::is_zero(f)) raise(errc::invalid_argument, "decomposition of zero slice");
    auto mp = monomial_power_decompose(f, d);
    if (!mp) return std::nullopt;
    IVec bvec;
    for (size_t j = 1; j < mp->shift.size(); ++j)
        bvec.push_back(BigInt(static_cast<long>(mp->shift[j])));
    NFElement gb = eval_relation(P.gammas, bvec);
    return SlicePower{std::move(bvec), static_cast<long>(mp->shift[0] / d), mp->unit,
                      std::move(mp->root), std::move(gb)};
}

// a(n) = sum_r phi(n - r) * tilde_a_r(n - r) where phi is the indicator of
// N | n.  Requires a primitive N-th root of unity in the common field; each
// tilde root must interpolate its slice root at multiples of N.
inline ExpPoly reassemble(const std::vector<ExpPoly>& tilde, long N) {
    if (N < 1 || tilde.size() != static_cast<size_t>(N))
        raise(errc::invalid_argument, "slice count mismatch");
    const FieldPtr& L = tilde[0].F;
    for (const auto& e : tilde) {
        check_same_field(L, e.F);
        if (!e.corrections.empty())
            raise(errc::invalid_argument, "tilde roots cannot carry corrections");
    }
    if (N == 1) return tilde[0];
    auto rts = roots_in_field(UniPoly::from_rat(L, zp::cyclotomic(N)));
    if (rts.empty())
        raise(errc::invalid_argument, "field lacks a primitive root for the slice count");
    const NFElement& zeta = rts.back().first;
    ExpPoly a = make_exppoly(L, {});
    for (long r = 0; r < N; ++r) {
        if (exppoly_is_zero(tilde[r])) continue;
        a = exppoly_add(a, exppoly_mul(hd::phi_shift(L, zeta, N, r),
                                       hd::shift_arg(tilde[r], r)));
    }
    return a;
}

struct Adjunction {
    NFElement radicand; // in the result field
    NFElement root;     // root^exponent = radicand
    long exponent = 1;
};

struct RootResult {
    bool found = false;
    ExpPoly a;                          // the d-th root, when found
    FieldHom embed;                     // input field into a.F
    std::vector<Adjunction> adjunctions;
    size_t fail_slice = 0;              // when not found
    Laurent witness;                    // offending slice encoding
};

// Decide whether b is identically the d-th power of an exponential
// polynomial over the algebraic closure, constructing the root when so.
// Torsion is split off along progressions, each slice is a monomial times a
// d-th power or there is no root at all, and the slice roots are stitched
// back together with roots of unity.
inline RootResult hadamard_dth_root(const ExpPoly& b, long d, const Budgets& budgets = Budgets{}) {
    if (d < 2) raise(errc::invalid_argument, "root exponent must be at least 2");
    const FieldPtr& F = b.F;

    ExpPoly pure = make_exppoly(F, b.terms);
    SliceDecomposition sd = split_progressions(pure, budgets);
    long N = sd.N;

    std::vector<std::optional<SlicePower>> powers(sd.slices.size());
    for (size_t r = 0; r < sd.slices.size(); ++r) {
        if (exppoly_is_zero(sd.slices[r].b_r)) continue;
        powers[r] = slice_root(sd.slices[r].f_r, sd.slices[r].pres, d);
        if (!powers[r]) {
            RootResult out;
            out.found = false;
            out.fail_slice = r;
            out.witness = sd.slices[r].f_r;
            return out;
        }
    }

    // radical tower accumulator: every stored element is kept in the current
    // top field L and lifted whenever the tower grows
    FieldPtr L = F;
    FieldHom emb = FieldHom::identity(F);
    std::vector<Adjunction> adjs;
    std::vector<NFElement> gamL;
    if (!sd.slices.empty()) gamL = sd.slices[0].pres.gammas;
    std::vector<NFElement> alphas(sd.slices.size()), scales(sd.slices.size());
    std::vector<NFElement> pending;                           // bases awaiting N-th roots
    std::vector<std::pair<NFElement, NFElement>> nth_roots;   // base -> rho
    std::vector<std::pair<long, NFElement>> corr_roots;       // index -> d-th root
    auto lift = [&](const TowerStep& st) {
        if (!st.extended) return;
        emb = emb.then(st.embed);
        for (auto& g : gamL) g = st.embed(g);
        for (auto& x : alphas)
            if (x.field()) x = st.embed(x);
        for (auto& x : scales)
            if (x.field()) x = st.embed(x);
        for (auto& x : pending) x = st.embed(x);
        for (auto& [base, rho] : nth_roots) {
            base = st.embed(base);
            rho = st.embed(rho);
        }
        for (auto& [n, w] : corr_roots) w = st.embed(w);
        for (auto& ad : adjs) {
            ad.radicand = st.embed(ad.radicand);
            ad.root = st.embed(ad.root);
        }
        L = st.field;
    };
    auto take_root = [&](NFElement x, long e) {
        if (x.is_zero()) return NFElement::zero(L);
        TowerStep st = hd::root_of(L, hd::radical_poly(L, x, e));
        NFElement rad = st.extended ? st.embed(x) : x;
        lift(st);
        if (!(st.root.pow(e) == rad))
            raise(errc::verification_failed, "radical fails its defining power");
        adjs.push_back({rad, st.root, e});
        return st.root;
    };

    for (size_t r = 0; r < powers.size(); ++r) {
        if (!powers[r]) continue;
        alphas[r] = take_root(emb(powers[r]->gb), d);
        scales[r] = take_root(emb(powers[r]->c), d);
    }

    // finite prefix disagreements get their own d-th roots
    for (const auto& [n, v] : b.corrections) corr_roots.push_back({n, take_root(emb(v), d)});

    // roots of unity and N-th roots of the slice root bases, for the tilde
    // interpolation at progression indices
    for (size_t r = 0; r < powers.size(); ++r) {
        if (!powers[r]) continue;
        for (const auto& [e, coeff] : powers[r]->H.terms) {
            NFElement base = alphas[r];
            for (size_t j = 0; j < gamL.size(); ++j)
                base = base * gamL[j].pow(static_cast<long>(e[1 + j]));
            pending.push_back(std::move(base));
        }
    }
    std::sort(pending.begin(), pending.end(),
              [](const NFElement& a, const NFElement& c) { return NFElement::cmp(a, c) < 0; });
    pending.erase(std::unique(pending.begin(), pending.end(),
                              [](const NFElement& a, const NFElement& c) { return a == c; }),
                  pending.end());
    if (N > 1) {
        TowerStep st = hd::root_of(L, UniPoly::from_rat(L, zp::cyclotomic(N)));
        lift(st);
        if (!st.root.pow(N).is_one())
            raise(errc::verification_failed, "cyclotomic root fails its order");
        if (st.extended) adjs.push_back({NFElement::one(L), st.root, N});
    }
    for (size_t i = 0; i < pending.size(); ++i) {
        NFElement rho = take_root(pending[i], N);
        nth_roots.push_back({pending[i], rho});
    }

    // slice roots over the final tower field, then their tilde versions
    std::vector<ExpPoly> tilde;
    UniPoly scaleN(L);
    scaleN.c = {NFElement::zero(L), NFElement::of(L, rat(BigInt(1), BigInt(N)))};
    for (size_t r = 0; r < powers.size(); ++r) {
        if (!powers[r]) {
            tilde.push_back(make_exppoly(L, {}));
            continue;
        }
        std::vector<ExpTerm> terms;
        for (const auto& [e, coeff] : powers[r]->H.terms) {
            NFElement base = alphas[r];
            for (size_t j = 0; j < gamL.size(); ++j)
                base = base * gamL[j].pow(static_cast<long>(e[1 + j]));
            long k = powers[r]->t0 + static_cast<long>(e[0]);
            terms.push_back({hd::x_power(L, k, emb(coeff) * scales[r]), std::move(base)});
        }
        ExpPoly ar = make_exppoly(L, std::move(terms));
        if (!(exppoly_pow(ar, d) == exppoly_map(sd.slices[r].b_r, emb)))
            raise(errc::verification_failed, "slice root fails its power identity");
        std::vector<ExpTerm> tterms;
        for (const auto& t : ar.terms) {
            NFElement rho;
            for (const auto& [bs, rh] : nth_roots)
                if (bs == t.base) {
                    rho = rh;
                    break;
                }
            if (!rho.field()) raise(errc::verification_failed, "missing interpolation root");
            tterms.push_back({up::compose(t.poly, scaleN), std::move(rho)});
        }
        ExpPoly tr = make_exppoly(L, std::move(tterms));
        for (long n = 0; n <= 4; ++n)
            if (!(exppoly_eval(tr, N * n) == exppoly_eval(ar, n)))
                raise(errc::verification_failed, "tilde root fails interpolation");
        tilde.push_back(std::move(tr));
    }

    ExpPoly a = reassemble(tilde, N);
    if (!corr_roots.empty()) a = make_exppoly(L, a.terms, std::move(corr_roots));

    if (!(exppoly_pow(a, d) == exppoly_map(b, emb)))
        raise(errc::verification_failed, "root fails its power identity");
    RootResult out;
    out.found = true;
    out.a = std::move(a);
    out.embed = emb;
    out.adjunctions = std::move(adjs);
    return out;
}

inline RootResult hadamard_dth_root(const RatFunc& R, long d, const Budgets& budgets = Budgets{}) {
    return hadamard_dth_root(ratfunc_to_exppoly(R, budgets), d, budgets);
}

} // namespace hroot
