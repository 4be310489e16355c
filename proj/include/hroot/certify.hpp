#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "hroot/config.hpp"
#include "hroot/error.hpp"
#include "hroot/exppoly.hpp"

namespace hroot {

// A verifiable witness that b(n) is not a d-th power in the coefficient
// field: a rational prime p with a degree-1 prime above it (cut out by a
// simple root of the field's defining polynomial mod p) and an arithmetic
// progression n = a (mod m), n >= n_min, on which every reduced value is a
// nonzero non-d-th-power residue.  period is a period of the reduced
// sequence on n >= n_min, and the progression is checked across one full
// period, so the finitely many checks cover the whole progression.
struct Certificate {
    long p = 0;
    long min_poly_root = 0;
    long d = 0;
    long a = 0;
    long m = 1;
    long period = 1;
    long n_min = 0;
};

inline bool operator==(const Certificate& x, const Certificate& y) {
    return x.p == y.p && x.min_poly_root == y.min_poly_root && x.d == y.d &&
           x.a == y.a && x.m == y.m && x.period == y.period && x.n_min == y.n_min;
}

// Termwise image of an exponential polynomial under reduction at a degree-1
// prime: bases and coefficient polynomials become prime-field scalars, and
// the value sequence is periodic with the stated period for n >= n_min.
struct ReducedSequence {
    long p = 0;
    long min_poly_root = 0;
    long period = 1;
    long n_min = 0;
    std::vector<long> bases;
    std::vector<std::vector<long>> coeffs;
    std::vector<std::pair<long, long>> corrections;
};

namespace ct {

inline long normp(long long x, long p) {
    long r = static_cast<long>(x % p);
    return r < 0 ? r + p : r;
}

inline long mulp(long a, long b, long p) {
    return static_cast<long>(static_cast<long long>(a) * b % p);
}

inline long powp(long b, long e, long p) {
    long r = 1 % p;
    b = normp(b, p);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mulp(r, b, p);
        b = mulp(b, b, p);
    }
    return r;
}

inline long invp(long a, long p) { return powp(a, p - 2, p); }

inline bool is_prime_long(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline long next_prime(long p) {
    do { ++p; } while (!is_prime_long(p));
    return p;
}

inline long ord_mod(long x, long p) {
    long k = 1, y = normp(x, p);
    if (y == 0) raise(errc::division_by_zero, "order of zero residue");
    long acc = y;
    while (acc != 1) {
        acc = mulp(acc, y, p);
        ++k;
    }
    return k;
}

// rational mod p, refusing primes that hit the denominator
inline std::optional<long> red_rat(const BigRat& q, long p) {
    BigInt pp(p);
    BigInt dm = q.get_den() % pp;
    if (dm == 0) return std::nullopt;
    BigInt nm = q.get_num() % pp;
    long den = normp(dm.get_si(), p);
    long num = normp(nm.get_si(), p);
    return mulp(num, invp(den, p), p);
}

inline std::optional<std::vector<long>> red_rpoly(const RatPoly& f, long p) {
    std::vector<long> out;
    out.reserve(f.size());
    for (const BigRat& c : f) {
        auto r = red_rat(c, p);
        if (!r) return std::nullopt;
        out.push_back(*r);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

inline long peval(const std::vector<long>& f, long x, long p) {
    long v = 0;
    for (size_t i = f.size(); i-- > 0;) v = normp(static_cast<long long>(v) * x + f[i], p);
    return v;
}

// image of a field element under t -> root in the prime field
inline std::optional<long> red_elem(const NFElement& x, long p, long root) {
    long v = 0, pw = 1 % p;
    for (const BigRat& c : x.coords()) {
        auto r = red_rat(c, p);
        if (!r) return std::nullopt;
        v = normp(v + static_cast<long long>(*r) * pw, p);
        pw = mulp(pw, normp(root, p), p);
    }
    return v;
}

// simple roots of the defining polynomial mod p, ascending; the rational
// field has the one prime (p) itself, tagged with the conventional root 0
inline std::optional<std::vector<long>> degree1_roots(const FieldPtr& F, long p) {
    if (F->degree() == 1) return std::vector<long>{0};
    auto f = red_rpoly(F->min_poly(), p);
    if (!f) return std::nullopt;
    if (static_cast<long>(f->size()) != F->degree() + 1) return std::nullopt;
    std::vector<long> df(f->size() - 1);
    for (size_t i = 1; i < f->size(); ++i) df[i - 1] = normp((*f)[i] * static_cast<long long>(i), p);
    std::vector<long> roots;
    for (long r = 0; r < p; ++r)
        if (peval(*f, r, p) == 0 && peval(df, r, p) != 0) roots.push_back(r);
    return roots;
}

inline std::vector<long> divisors_ascending(long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i) {
        if (n % i) continue;
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
    }
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace ct

// true iff x is a d-th power in the prime field (zero included)
inline bool dth_power_residue_test(long x, long p, long d) {
    x = ct::normp(x, p);
    if (x == 0) return true;
    long g = std::gcd(d, p - 1);
    return ct::powp(x, (p - 1) / g, p) == 1;
}

// termwise reduction at the degree-1 prime (p, t - root); rejects primes
// hitting a denominator, a base, or a repeated root of the defining
// polynomial.  The period multiplies in p exactly when a reduced
// coefficient polynomial is nonconstant.
inline ReducedSequence reduce_sequence(const ExpPoly& b, long p, long root) {
    if (!ct::is_prime_long(p)) raise(errc::invalid_argument, "modulus must be prime");
    if (root < 0 || root >= p) raise(errc::invalid_argument, "root out of range");
    const FieldPtr& F = b.F;
    if (F->degree() > 1) {
        auto f = ct::red_rpoly(F->min_poly(), p);
        if (!f || static_cast<long>(f->size()) != F->degree() + 1)
            raise(errc::bad_reduction, "defining polynomial degenerates");
        std::vector<long> df(f->size() - 1);
        for (size_t i = 1; i < f->size(); ++i)
            df[i - 1] = ct::normp((*f)[i] * static_cast<long long>(i), p);
        if (ct::peval(*f, root, p) != 0 || ct::peval(df, root, p) == 0)
            raise(errc::bad_reduction, "not a simple root of the defining polynomial");
    }
    ReducedSequence rs;
    rs.p = p;
    rs.min_poly_root = root;
    long L = 1;
    bool nonconst = false;
    for (const auto& t : b.terms) {
        auto base = ct::red_elem(t.base, p, root);
        if (!base) raise(errc::bad_reduction, "denominator of a base vanishes");
        if (*base == 0) raise(errc::bad_reduction, "base vanishes at the prime");
        std::vector<long> cs;
        for (long i = 0; i <= t.poly.deg(); ++i) {
            auto c = ct::red_elem(t.poly.at(i), p, root);
            if (!c) raise(errc::bad_reduction, "denominator of a coefficient vanishes");
            cs.push_back(*c);
        }
        while (!cs.empty() && cs.back() == 0) cs.pop_back();
        if (cs.size() > 1) nonconst = true;
        long o = ct::ord_mod(*base, p);
        L = std::lcm(L, o);
        rs.bases.push_back(*base);
        rs.coeffs.push_back(std::move(cs));
    }
    for (const auto& [n, v] : b.corrections) {
        auto r = ct::red_elem(v, p, root);
        if (!r) raise(errc::bad_reduction, "denominator of a correction vanishes");
        rs.corrections.emplace_back(n, *r);
        rs.n_min = std::max(rs.n_min, n + 1);
    }
    rs.period = nonconst ? p * L : L;
    return rs;
}

// value of the reduced sequence at n, honoring corrections
inline long reduced_eval(const ReducedSequence& rs, long n) {
    for (const auto& [i, v] : rs.corrections)
        if (i == n) return v;
    long acc = 0;
    for (size_t i = 0; i < rs.bases.size(); ++i) {
        long c = ct::peval(rs.coeffs[i], n % rs.p, rs.p);
        acc = ct::normp(acc + static_cast<long long>(c) * ct::powp(rs.bases[i], n, rs.p), rs.p);
    }
    return acc;
}

// Independent check of a claimed certificate.  Values are recomputed from
// the generating function by long division mod p, so none of the search
// machinery is trusted.  Periodicity is confirmed across the whole checked
// window; the tail beyond it matches because both shifts satisfy the same
// linear recurrence on at least den-degree many matching consecutive
// indices past the numerator degree.
inline bool verify_certificate(const ExpPoly& b, const Certificate& c,
                               const Budgets& budgets = Budgets{}) {
    if (c.p < 2 || !ct::is_prime_long(c.p)) return false;
    if (c.d < 2 || std::gcd(c.d, c.p - 1) <= 1) return false;
    if (c.m < 1 || c.period < 1 || c.n_min < 0 || c.a < c.n_min) return false;
    if (c.min_poly_root < 0 || c.min_poly_root >= c.p) return false;
    const long p = c.p;
    const FieldPtr& F = b.F;
    if (F->degree() > 1) {
        auto f = ct::red_rpoly(F->min_poly(), p);
        if (!f || static_cast<long>(f->size()) != F->degree() + 1) return false;
        std::vector<long> df(f->size() - 1);
        for (size_t i = 1; i < f->size(); ++i)
            df[i - 1] = ct::normp((*f)[i] * static_cast<long long>(i), p);
        if (ct::peval(*f, c.min_poly_root, p) != 0) return false;
        if (ct::peval(df, c.min_poly_root, p) == 0) return false;
    }
    const long long cap = budgets.cert_period_cap;
    if (c.period > cap || c.m > cap) return false;
    long W = std::lcm(c.m, c.period);
    if (W > cap) return false;

    RatFunc R = exppoly_to_ratfunc(b);
    std::vector<long> num, den;
    for (long i = 0; i <= R.num.deg(); ++i) {
        auto r = ct::red_elem(R.num.at(i), p, c.min_poly_root);
        if (!r) return false;
        num.push_back(*r);
    }
    for (long i = 0; i <= R.den.deg(); ++i) {
        auto r = ct::red_elem(R.den.at(i), p, c.min_poly_root);
        if (!r) return false;
        den.push_back(*r);
    }
    if (den.empty() || den[0] == 0) return false;
    long inv0 = ct::invp(den[0], p);
    long D = static_cast<long>(den.size()) - 1;
    long top = std::max(c.n_min + W, static_cast<long>(num.size())) + c.period + D + 1;
    std::vector<long> v(top);
    for (long n = 0; n < top; ++n) {
        long long acc = n < static_cast<long>(num.size()) ? num[n] : 0;
        for (long i = 1; i <= D && i <= n; ++i)
            acc -= static_cast<long long>(den[i]) * v[n - i] % p;
        v[n] = ct::mulp(ct::normp(acc, p), inv0, p);
    }
    for (long j = c.n_min; j + c.period < top; ++j)
        if (v[j] != v[j + c.period]) return false;
    long s = (c.a - c.n_min) % c.m;
    for (long j = s; j < W; j += c.m) {
        long x = v[c.n_min + j];
        if (x == 0 || dth_power_residue_test(x, p, c.d)) return false;
    }
    return true;
}

struct CertificateReport {
    long primes_considered = 0;
    std::vector<long> skipped_period_cap;
};

// Ascending search for a certificate: among the first prime-budget primes,
// keep those with gcd(d, p-1) > 1 and a degree-1 prime of good reduction,
// tabulate one period of residue statuses for n >= n_min, and scan moduli
// m | period ascending, then offsets ascending.  The first hit is verified
// independently before being returned.  An empty result is inconclusive,
// never a proof that b is a d-th power.
inline std::optional<Certificate> find_certificate(const ExpPoly& b, long d,
                                                   const Budgets& budgets = Budgets{},
                                                   CertificateReport* report = nullptr) {
    if (d < 2) raise(errc::invalid_argument, "power must be at least 2");
    long p = 1;
    for (long count = 0; count < budgets.cert_primes; ++count) {
        p = ct::next_prime(p);
        if (report) report->primes_considered = count + 1;
        if (std::gcd(d, p - 1) <= 1) continue;
        auto roots = ct::degree1_roots(b.F, p);
        if (!roots) continue;
        for (long root : *roots) {
            ReducedSequence rs;
            try {
                rs = reduce_sequence(b, p, root);
            } catch (const Error& e) {
                if (e.code() == errc::bad_reduction) continue;
                throw;
            }
            if (rs.period > budgets.cert_period_cap) {
                if (report) report->skipped_period_cap.push_back(p);
                break;
            }
            const long P = rs.period, n_min = rs.n_min;
            std::vector<char> good(P);
            std::vector<long> pw(rs.bases.size());
            for (size_t i = 0; i < pw.size(); ++i) pw[i] = ct::powp(rs.bases[i], n_min, p);
            for (long j = 0; j < P; ++j) {
                long n = n_min + j;
                long acc = 0;
                for (size_t i = 0; i < pw.size(); ++i) {
                    long cv = ct::peval(rs.coeffs[i], n % p, p);
                    acc = ct::normp(acc + static_cast<long long>(cv) * pw[i], p);
                    pw[i] = ct::mulp(pw[i], rs.bases[i], p);
                }
                good[j] = acc != 0 && !dth_power_residue_test(acc, p, d);
            }
            for (long m : ct::divisors_ascending(P)) {
                for (long s = 0; s < m; ++s) {
                    bool all = true;
                    for (long j = s; j < P; j += m)
                        if (!good[j]) { all = false; break; }
                    if (!all) continue;
                    Certificate c{p, root, d, n_min + s, m, P, n_min};
                    if (!verify_certificate(b, c, budgets))
                        raise(errc::verification_failed, "search emitted an unverifiable certificate");
                    return c;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace hroot
