#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "config.hpp"
#include "fields.hpp"
#include "unipoly.hpp"

namespace hroot {

// ---------- rational generating function ----------

// num/den with den(0) = 1 and gcd(num, den) = 1
struct RatFunc {
    UniPoly num, den;
};

inline RatFunc make_ratfunc(UniPoly num, UniPoly den) {
    check_same_field(num.F, den.F);
    if (den.is_zero() || den.at(0).is_zero())
        raise(errc::invalid_argument, "denominator must be a unit at zero");
    if (!num.is_zero()) {
        UniPoly g = up::gcd_poly(num, den);
        if (g.deg() > 0) {
            num = up::exact_div(num, g);
            den = up::exact_div(den, g);
        }
    } else {
        den = UniPoly::constant(den.F, NFElement::one(den.F));
    }
    NFElement c = den.at(0).inv();
    num = up::scale(num, c);
    den = up::scale(den, c);
    return RatFunc{std::move(num), std::move(den)};
}

inline bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
}

// Taylor coefficients of num/den by long division; the exactness oracle
// the other presentations are checked against.
inline std::vector<NFElement> taylor_coeffs(const RatFunc& R, long count) {
    const FieldPtr& F = R.num.F;
    std::vector<NFElement> b;
    b.reserve(count);
    long t = R.den.deg();
    for (long n = 0; n < count; ++n) {
        NFElement v = R.num.at(n);
        for (long i = 1; i <= t && i <= n; ++i) v -= R.den.at(i) * b[n - i];
        b.push_back(v);
    }
    return b;
}

// ---------- linear recurrence (tail presentation) ----------

// sum_i coeffs[i] * b(n+i) = 0 for all n >= n0, with initial terms
// b(n0) .. b(n0 + t - 1); values below n0 are not represented
struct LinearRecurrence {
    FieldPtr F;
    long n0 = 0;
    std::vector<NFElement> coeffs;  // c_0 .. c_t, c_t != 0
    std::vector<NFElement> initial; // length t
};

inline long rec_order(const LinearRecurrence& r) {
    return static_cast<long>(r.coeffs.size()) - 1;
}

// b(n0) .. b(n0 + count - 1)
inline std::vector<NFElement> rec_generate(const LinearRecurrence& r, long count) {
    long t = rec_order(r);
    if (t < 1) raise(errc::invalid_argument, "recurrence order must be positive");
    std::vector<NFElement> b(r.initial.begin(), r.initial.end());
    NFElement lead_inv = r.coeffs[t].inv();
    while (static_cast<long>(b.size()) < count) {
        size_t n = b.size();
        NFElement acc = NFElement::zero(r.F);
        for (long i = 0; i < t; ++i) acc += r.coeffs[i] * b[n - t + i];
        b.push_back(-acc * lead_inv);
    }
    b.resize(count, NFElement::zero(r.F));
    return b;
}

inline LinearRecurrence ratfunc_to_recurrence(const RatFunc& R) {
    long t = R.den.deg();
    if (t < 1) {
        // polynomial series: represent with b(n+1) = 0 past the numerator
        long n0 = R.num.deg() + 1;
        return LinearRecurrence{R.num.F, n0 < 0 ? 0 : n0,
                                {NFElement::zero(R.num.F), NFElement::one(R.num.F)},
                                {NFElement::zero(R.num.F)}};
    }
    long n0 = R.num.deg() + 1 - t;
    if (n0 < 0) n0 = 0;
    std::vector<NFElement> coeffs(t + 1, NFElement::zero(R.num.F));
    for (long i = 0; i <= t; ++i) coeffs[i] = R.den.at(t - i);
    auto pre = taylor_coeffs(R, n0 + t);
    std::vector<NFElement> init(pre.begin() + n0, pre.end());
    return LinearRecurrence{R.num.F, n0, std::move(coeffs), std::move(init)};
}

// generating function of the tail: coefficients 0 below n0, b(n) at n >= n0
inline RatFunc recurrence_to_ratfunc(const LinearRecurrence& r) {
    long t = rec_order(r);
    const FieldPtr& F = r.F;
    UniPoly den(F);
    den.c.assign(t + 1, NFElement::zero(F));
    for (long i = 0; i <= t; ++i) den.c[i] = r.coeffs[t - i];
    den.normalize();
    // num = (den * S) mod x^t where S has the initial terms
    UniPoly S(F);
    S.c = r.initial;
    S.normalize();
    UniPoly prod = up::mul(den, S);
    prod.c.resize(std::min<size_t>(prod.c.size(), t));
    prod.normalize();
    // shift by x^n0
    UniPoly num(F);
    num.c.assign(r.n0, NFElement::zero(F));
    for (const auto& v : prod.c) num.c.push_back(v);
    num.normalize();
    return make_ratfunc(std::move(num), std::move(den));
}

// ---------- exponential polynomial ----------

struct ExpTerm {
    UniPoly poly;   // B_i, nonzero
    NFElement base; // beta_i, nonzero
};

// sum_i B_i(n) * base_i^n for n >= 0, overridden at the correction indices
struct ExpPoly {
    FieldPtr F;
    std::vector<ExpTerm> terms;                        // bases distinct, sorted
    std::vector<std::pair<long, NFElement>> corrections; // sorted by index
};

namespace ep {

inline NFElement eval_terms(const ExpPoly& e, long n) {
    NFElement acc = NFElement::zero(e.F);
    NFElement nn = NFElement::of(e.F, n);
    for (const auto& t : e.terms) acc += up::eval(t.poly, nn) * t.base.pow(n);
    return acc;
}

} // namespace ep

inline NFElement exppoly_eval(const ExpPoly& e, long n) {
    if (n < 0) raise(errc::invalid_argument, "sequence index must be nonnegative");
    for (const auto& [i, v] : e.corrections)
        if (i == n) return v;
    return ep::eval_terms(e, n);
}

// canonical form: bases collected by exact equality, zero polynomials
// dropped, terms sorted by base, corrections sorted and only kept where
// they differ from the term sum
inline ExpPoly make_exppoly(FieldPtr F, std::vector<ExpTerm> terms,
                            std::vector<std::pair<long, NFElement>> corrections = {}) {
    struct CmpNF {
        bool operator()(const NFElement& a, const NFElement& b) const {
            return NFElement::cmp(a, b) < 0;
        }
    };
    std::map<NFElement, UniPoly, CmpNF> collect;
    for (auto& t : terms) {
        check_same_field(F, t.poly.F);
        check_same_field(F, t.base.field());
        if (t.base.is_zero()) raise(errc::invalid_argument, "zero base in exponential polynomial");
        if (t.poly.is_zero()) continue;
        auto it = collect.find(t.base);
        if (it == collect.end()) collect.emplace(t.base, t.poly);
        else it->second = up::add(it->second, t.poly);
    }
    ExpPoly e{std::move(F), {}, {}};
    for (auto& [base, poly] : collect)
        if (!poly.is_zero()) e.terms.push_back({poly, base});
    std::sort(corrections.begin(), corrections.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < corrections.size(); ++i) {
        const auto& [n, v] = corrections[i];
        if (n < 0) raise(errc::invalid_argument, "correction index must be nonnegative");
        if (i > 0 && corrections[i - 1].first == n)
            raise(errc::invalid_argument, "duplicate correction index");
        check_same_field(e.F, v.field());
        if (!(v == ep::eval_terms(e, n))) e.corrections.push_back({n, v});
    }
    return e;
}

inline bool exppoly_is_zero(const ExpPoly& e) {
    return e.terms.empty() && e.corrections.empty();
}

inline bool operator==(const ExpPoly& a, const ExpPoly& b) {
    check_same_field(a.F, b.F);
    if (a.terms.size() != b.terms.size() || a.corrections.size() != b.corrections.size())
        return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (!(a.terms[i].base == b.terms[i].base) || !(a.terms[i].poly == b.terms[i].poly))
            return false;
    for (size_t i = 0; i < a.corrections.size(); ++i)
        if (a.corrections[i].first != b.corrections[i].first ||
            !(a.corrections[i].second == b.corrections[i].second))
            return false;
    return true;
}

namespace ep {

inline std::vector<long> correction_indices(const ExpPoly& a, const ExpPoly& b) {
    std::vector<long> idx;
    for (const auto& [n, v] : a.corrections) idx.push_back(n);
    for (const auto& [n, v] : b.corrections) idx.push_back(n);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

} // namespace ep

inline ExpPoly exppoly_add(const ExpPoly& a, const ExpPoly& b) {
    check_same_field(a.F, b.F);
    std::vector<ExpTerm> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    std::vector<std::pair<long, NFElement>> corr;
    for (long n : ep::correction_indices(a, b))
        corr.push_back({n, exppoly_eval(a, n) + exppoly_eval(b, n)});
    return make_exppoly(a.F, std::move(terms), std::move(corr));
}

inline ExpPoly exppoly_scale(const ExpPoly& a, const NFElement& s) {
    check_same_field(a.F, s.field());
    std::vector<ExpTerm> terms;
    for (const auto& t : a.terms) terms.push_back({up::scale(t.poly, s), t.base});
    std::vector<std::pair<long, NFElement>> corr;
    for (const auto& [n, v] : a.corrections) corr.push_back({n, v * s});
    return make_exppoly(a.F, std::move(terms), std::move(corr));
}

inline ExpPoly exppoly_neg(const ExpPoly& a) {
    return exppoly_scale(a, -NFElement::one(a.F));
}

inline ExpPoly exppoly_sub(const ExpPoly& a, const ExpPoly& b) {
    return exppoly_add(a, exppoly_neg(b));
}

inline ExpPoly exppoly_mul(const ExpPoly& a, const ExpPoly& b) {
    check_same_field(a.F, b.F);
    std::vector<ExpTerm> terms;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            terms.push_back({up::mul(ta.poly, tb.poly), ta.base * tb.base});
    std::vector<std::pair<long, NFElement>> corr;
    for (long n : ep::correction_indices(a, b))
        corr.push_back({n, exppoly_eval(a, n) * exppoly_eval(b, n)});
    return make_exppoly(a.F, std::move(terms), std::move(corr));
}

inline ExpPoly exppoly_pow(const ExpPoly& a, long d) {
    if (d < 0) raise(errc::invalid_argument, "negative power of a sequence");
    ExpPoly r = make_exppoly(
        a.F, {{UniPoly::constant(a.F, NFElement::one(a.F)), NFElement::one(a.F)}});
    ExpPoly base = a;
    while (d > 0) {
        if (d & 1) r = exppoly_mul(r, base);
        d >>= 1;
        if (d > 0) base = exppoly_mul(base, base);
    }
    return r;
}

// lift every coefficient, base, and correction through a field embedding
inline ExpPoly exppoly_map(const ExpPoly& a, const FieldHom& h) {
    check_same_field(a.F, h.from);
    std::vector<ExpTerm> terms;
    for (const auto& t : a.terms) terms.push_back({h.map(t.poly), h(t.base)});
    std::vector<std::pair<long, NFElement>> corr;
    for (const auto& [n, v] : a.corrections) corr.push_back({n, h(v)});
    return make_exppoly(h.to, std::move(terms), std::move(corr));
}

// ---------- conversions ----------

namespace ep {

// first m coefficients of a/b as power series, b(0) != 0
inline std::vector<NFElement> series_div(const UniPoly& a, const UniPoly& b, long m) {
    NFElement b0i = b.at(0).inv();
    std::vector<NFElement> c;
    c.reserve(m);
    for (long k = 0; k < m; ++k) {
        NFElement v = a.at(k);
        for (long i = 1; i <= k; ++i) v -= b.at(i) * c[k - i];
        c.push_back(v * b0i);
    }
    return c;
}

// (x+1)(x+2)...(x+j) / j!  -- the polynomial n -> C(n+j, j)
inline UniPoly binom_shift_poly(const FieldPtr& F, long j) {
    UniPoly p = UniPoly::constant(F, NFElement::one(F));
    BigInt fact(1);
    for (long l = 1; l <= j; ++l) {
        UniPoly lin(F);
        lin.c = {NFElement::of(F, l), NFElement::one(F)};
        p = up::mul(p, lin);
        fact *= l;
    }
    return up::scale(p, NFElement::of(F, rat(BigInt(1), fact)));
}

} // namespace ep

// Splits the denominator completely (extending the field as needed),
// partial-fraction expands, and returns the exponential polynomial whose
// values match the Taylor coefficients everywhere; disagreements below
// deg num - deg den + 1 become corrections.
inline ExpPoly ratfunc_to_exppoly(const RatFunc& R, const Budgets& budgets = Budgets{}) {
    FieldPtr L = R.num.F;
    FieldHom emb = FieldHom::identity(L);
    UniPoly den = R.den;
    // split the denominator
    for (;;) {
        auto fac = uni_factor_NF(den);
        const UniPoly* worst = nullptr;
        for (const auto& [g, m] : fac)
            if (g.deg() > 1 && (!worst || g.deg() < worst->deg())) worst = &g;
        if (!worst) break;
        AdjoinResult ext = adjoin_root(L, *worst);
        if (ext.field->degree() > budgets.max_split_degree)
            raise(errc::degree_budget_exceeded, "splitting field degree over budget");
        L = ext.field;
        emb = emb.then(ext.embed);
        den = ext.embed.map(den);
    }
    UniPoly num = emb.map(R.num);
    // polynomial part only shifts finitely many coefficients
    long n0 = num.deg() - den.deg() + 1;
    if (n0 < 0) n0 = 0;
    UniPoly rem = num;
    if (n0 > 0) rem = up::divmod(num, den).second;
    auto rts = roots_in_field(den);
    std::vector<ExpTerm> terms;
    for (const auto& [alpha, mult] : rts) {
        // q = den / (x - alpha)^mult, Taylor-expand rem/q at alpha
        UniPoly lin = UniPoly::x_minus(alpha);
        UniPoly q = den;
        for (long i = 0; i < mult; ++i) q = up::exact_div(q, lin);
        UniPoly shift_arg(L);
        shift_arg.c = {alpha, NFElement::one(L)};
        UniPoly rs = up::compose(rem, shift_arg);
        UniPoly qs = up::compose(q, shift_arg);
        std::vector<NFElement> t = ep::series_div(rs, qs, mult);
        // c_j / (x-alpha)^j contributes c_j (-beta)^j C(n+j-1, j-1) beta^n
        NFElement beta = alpha.inv();
        UniPoly B = UniPoly::zero(L);
        for (long j = 1; j <= mult; ++j) {
            NFElement cj = t[mult - j];
            if (cj.is_zero()) continue;
            NFElement w = cj * (-beta).pow(j);
            B = up::add(B, up::scale(ep::binom_shift_poly(L, j - 1), w));
        }
        if (!B.is_zero()) terms.push_back({B, beta});
    }
    std::vector<std::pair<long, NFElement>> corr;
    if (n0 > 0) {
        auto pre = taylor_coeffs(RatFunc{num, den}, n0);
        for (long n = 0; n < n0; ++n) corr.push_back({n, pre[n]});
    }
    ExpPoly e = make_exppoly(L, std::move(terms), std::move(corr));
    // sanity: agree with long division on a prefix
    long check = den.deg() * 2 + n0 + 4;
    auto oracle = taylor_coeffs(RatFunc{num, den}, check);
    for (long n = 0; n < check; ++n)
        if (!(exppoly_eval(e, n) == oracle[n]))
            raise(errc::verification_failed, "series expansion mismatch");
    return e;
}

// generating function with exactly the sequence's coefficients
inline RatFunc exppoly_to_ratfunc(const ExpPoly& e) {
    const FieldPtr& F = e.F;
    UniPoly num = UniPoly::zero(F);
    UniPoly den = UniPoly::constant(F, NFElement::one(F));
    for (const auto& t : e.terms) {
        // rewrite B in the basis C(n+j, j), j = 0..deg B
        UniPoly B = t.poly;
        long degB = B.deg();
        UniPoly tnum = UniPoly::zero(F);
        UniPoly tden = UniPoly::constant(F, NFElement::one(F));
        UniPoly lin(F); // 1 - base*x
        lin.c = {NFElement::one(F), -t.base};
        std::vector<NFElement> d(degB + 1, NFElement::zero(F));
        for (long j = degB; j >= 0; --j) {
            if (B.deg() < j) continue;
            // leading coefficient of C(n+j, j) is 1/j!
            BigInt fact(1);
            for (long l = 2; l <= j; ++l) fact *= l;
            d[j] = B.at(j) * NFElement::of(F, BigRat(fact));
            B = up::sub(B, up::scale(ep::binom_shift_poly(F, j), d[j]));
        }
        // sum_j d_j / (1 - base x)^(j+1) over common denominator (1-bx)^(deg+1)
        tden = up::pow(lin, degB + 1);
        for (long j = 0; j <= degB; ++j) {
            if (d[j].is_zero()) continue;
            tnum = up::add(tnum, up::scale(up::pow(lin, degB - j), d[j]));
        }
        // accumulate
        num = up::add(up::mul(num, tden), up::mul(tnum, den));
        den = up::mul(den, tden);
    }
    // corrections add (v - termsum) x^n
    for (const auto& [n, v] : e.corrections) {
        NFElement delta = v - ep::eval_terms(e, n);
        UniPoly mono(F);
        mono.c.assign(n, NFElement::zero(F));
        mono.c.push_back(delta);
        mono.normalize();
        num = up::add(num, up::mul(mono, den));
    }
    return make_ratfunc(std::move(num), std::move(den));
}

} // namespace hroot
