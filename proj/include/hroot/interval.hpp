#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "number_field.hpp"
#include "zlinalg.hpp"
#include "zpoly.hpp"

namespace hroot {

// ---------- dyadic rounding ----------

namespace iv {

inline BigRat round_down(const BigRat& q, long prec) {
    BigInt num = q.get_num() << prec;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    BigRat r(fl, BigInt(1) << prec);
    r.canonicalize();
    return r;
}

inline BigRat round_up(const BigRat& q, long prec) {
    BigInt num = q.get_num() << prec;
    BigInt cl;
    mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    BigRat r(cl, BigInt(1) << prec);
    r.canonicalize();
    return r;
}

inline BigRat round_nearest_dyadic(const BigRat& q, long prec) {
    BigRat scaled = q * BigRat(BigInt(1) << prec);
    BigInt n = la::round_nearest(scaled);
    BigRat r(n, BigInt(1) << prec);
    r.canonicalize();
    return r;
}

} // namespace iv

// Closed rational interval.  Operations round endpoints outward to dyadic
// rationals at the given precision so denominators stay bounded.
struct RIv {
    BigRat lo, hi;

    RIv() : lo(0), hi(0) {}
    RIv(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {}
    static RIv point(const BigRat& q) { return RIv(q, q); }

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
    BigRat width() const { return hi - lo; }

    RIv round_out(long prec) const { return RIv(iv::round_down(lo, prec), iv::round_up(hi, prec)); }

    friend RIv operator+(const RIv& a, const RIv& b) { return RIv(a.lo + b.lo, a.hi + b.hi); }
    friend RIv operator-(const RIv& a, const RIv& b) { return RIv(a.lo - b.hi, a.hi - b.lo); }
    RIv operator-() const { return RIv(-hi, -lo); }
    friend RIv operator*(const RIv& a, const RIv& b) {
        BigRat v1 = a.lo * b.lo, v2 = a.lo * b.hi, v3 = a.hi * b.lo, v4 = a.hi * b.hi;
        BigRat lo = v1, hi = v1;
        for (const BigRat* v : {&v2, &v3, &v4}) {
            if (*v < lo) lo = *v;
            if (*v > hi) hi = *v;
        }
        return RIv(std::move(lo), std::move(hi));
    }
    friend RIv operator*(const RIv& a, const BigRat& c) {
        return c >= 0 ? RIv(a.lo * c, a.hi * c) : RIv(a.hi * c, a.lo * c);
    }
    // reciprocal; interval must exclude zero
    RIv inv() const {
        if (contains_zero()) raise(errc::division_by_zero, "interval straddles zero");
        return RIv(BigRat(1) / hi, BigRat(1) / lo);
    }
};

// Complex box with rational-interval components.
struct CBox {
    RIv re, im;

    CBox() = default;
    CBox(RIv r, RIv i) : re(std::move(r)), im(std::move(i)) {}

    friend CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
    friend CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
    friend CBox operator*(const CBox& a, const CBox& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CBox round_out(long prec) const { return {re.round_out(prec), im.round_out(prec)}; }
    RIv mag2() const { return re * re + im * im; }
};

namespace iv {

// ---------- elementary functions on points, returning tight intervals ----------

// atanh by series; |z| <= 1/2 required.  Exact argument, rounded terms.
// Rounding keeps |pw| floored near 2^-guard, so the break threshold sits a
// few bits above it; the tail uses the actual final magnitude.
inline RIv atanh_point(const BigRat& z, long prec) {
    long guard = prec + 16;
    long K = guard; // enough iterations for |z| <= 1/2
    RIv sum = RIv::point(0);
    RIv zz = RIv::point(z);
    RIv z2 = (zz * zz).round_out(guard);
    RIv pw = zz;
    BigRat eps4(4, BigInt(1) << guard);
    BigRat mag(0);
    for (long k = 0; k <= K; ++k) {
        sum = (sum + pw * BigRat(rat(1, 2 * k + 1))).round_out(guard);
        pw = (pw * z2).round_out(guard);
        mag = pw.hi > -pw.lo ? pw.hi : BigRat(-pw.lo);
        if (mag < eps4) break;
    }
    // the true next term is inside pw; geometric tail ratio z^2 <= 1/4
    BigRat tail = mag * 2;
    return RIv(sum.lo - tail, sum.hi + tail).round_out(prec);
}

// natural log of a positive rational, via range reduction to [1, 2)
inline RIv ln_point(const BigRat& q, long prec) {
    if (q <= 0) raise(errc::invalid_argument, "log of nonpositive value");
    long guard = prec + 16;
    long k = 0;
    BigRat m = q;
    while (m >= 2) { m /= 2; ++k; }
    while (m < 1) { m *= 2; --k; }
    // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3]
    RIv lm = atanh_point((m - 1) / (m + 1), guard) * BigRat(2);
    static const BigRat third = rat(1, 3);
    RIv ln2 = atanh_point(third, guard) * BigRat(2);
    return (lm + ln2 * BigRat(k)).round_out(prec);
}

// arctangent by alternating series with one fold; |t| <= 6/5 required
inline RIv atan_point(const BigRat& t, long prec);

inline RIv atan_series(const BigRat& t, long prec) {
    // |t| <= 1/2, strictly alternating with decreasing terms
    long guard = prec + 16;
    RIv sum = RIv::point(0);
    RIv tt = RIv::point(t);
    RIv t2 = (tt * tt).round_out(guard);
    RIv pw = tt;
    BigRat eps4(4, BigInt(1) << guard);
    for (long k = 0;; ++k) {
        RIv term = pw * BigRat(rat(k % 2 == 0 ? 1 : -1, 2 * k + 1));
        sum = (sum + term).round_out(guard);
        pw = (pw * t2).round_out(guard);
        BigRat mag = pw.hi > -pw.lo ? pw.hi : BigRat(-pw.lo);
        if (mag < eps4) {
            // alternating remainder is below the first omitted term, which
            // lies inside pw
            return RIv(sum.lo - mag, sum.hi + mag).round_out(prec);
        }
        if (k > 4 * guard) raise(errc::verification_failed, "arctan series stalled");
    }
}

inline RIv pi_interval(long prec) {
    long guard = prec + 16;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    RIv a = atan_series(rat(1, 5), guard) * BigRat(16);
    RIv b = atan_series(rat(1, 239), guard) * BigRat(4);
    return (a - b).round_out(prec);
}

inline RIv atan_point(const BigRat& t, long prec) {
    if (t < 0) return -atan_point(-t, prec);
    if (t <= rat(2, 5)) return atan_series(t, prec);
    if (t > rat(6, 5)) raise(errc::invalid_argument, "arctan argument too large");
    // atan t = pi/4 + atan((t-1)/(t+1)), folded argument in [-3/7, 1/11]
    long guard = prec + 8;
    RIv base = pi_interval(guard) * rat(1, 4);
    return (base + atan_series((t - 1) / (t + 1), guard)).round_out(prec);
}

// monotone extension to intervals
inline RIv ln_iv(const RIv& x, long prec) {
    return RIv(ln_point(x.lo, prec).lo, ln_point(x.hi, prec).hi);
}
inline RIv atan_iv(const RIv& x, long prec) {
    return RIv(atan_point(x.lo, prec).lo, atan_point(x.hi, prec).hi);
}

// log |b| = ln(re^2 + im^2) / 2; nullopt when the box cannot exclude zero
inline std::optional<RIv> log_abs_box(const CBox& b, long prec) {
    RIv m2 = b.mag2();
    if (!m2.positive()) return std::nullopt;
    RIv l = ln_iv(m2, prec + 2);
    return (l * rat(1, 2)).round_out(prec);
}

// an argument representative of the box (within (-pi/2, 3pi/2]); nullopt
// when the box needs refinement.  Any fixed representative works for the
// callers, which carry explicit 2*pi*k slack variables.
inline std::optional<RIv> arg_box(const CBox& b, long prec) {
    RIv A = b.re, B = b.im;
    auto absiv = [](const RIv& x) {
        if (x.lo >= 0) return x;
        if (x.hi <= 0) return -x;
        BigRat m = x.hi > -x.lo ? x.hi : BigRat(-x.lo);
        return RIv(BigRat(0), m);
    };
    RIv aA = absiv(A), aB = absiv(B);
    // re-dominant: |im/re| <= 6/5 guaranteed when |re|.lo * 6/5 >= |im|.hi
    if (A.lo > 0 && aB.hi <= aA.lo * rat(6, 5)) {
        RIv t = B * A.inv();
        return atan_iv(t, prec);
    }
    if (A.hi < 0 && aB.hi <= aA.lo * rat(6, 5)) {
        RIv t = B * A.inv();
        return (pi_interval(prec + 4) + atan_iv(t, prec + 4)).round_out(prec);
    }
    if (B.lo > 0 && aA.hi <= aB.lo * rat(6, 5)) {
        RIv t = A * B.inv();
        return (pi_interval(prec + 4) * rat(1, 2) - atan_iv(t, prec + 4)).round_out(prec);
    }
    if (B.hi < 0 && aA.hi <= aB.lo * rat(6, 5)) {
        RIv t = A * B.inv();
        return (-(pi_interval(prec + 4) * rat(1, 2)) - atan_iv(t, prec + 4)).round_out(prec);
    }
    return std::nullopt;
}

// ---------- real root isolation (Sturm) ----------

inline std::vector<RatPoly> sturm_sequence(const RatPoly& f) {
    std::vector<RatPoly> seq{f, zp::derivative(f)};
    while (zp::deg(seq.back()) > 0) {
        RatPoly r = zp::neg(zp::rem(seq[seq.size() - 2], seq.back()));
        if (r.empty()) break; // squarefree input should not reach a zero remainder
        seq.push_back(std::move(r));
    }
    return seq;
}

inline int sign_of(const BigRat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int variations_at(const std::vector<RatPoly>& seq, const BigRat& x) {
    int var = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_of(zp::eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// isolating intervals for all real roots of a squarefree polynomial, each
// interval either a point [r, r] or an open span with a sign change
inline std::vector<RIv> isolate_real_roots(const RatPoly& f) {
    std::vector<RIv> out;
    if (zp::deg(f) < 1) return out;
    auto seq = sturm_sequence(f);
    BigRat B(1);
    for (size_t i = 0; i + 1 < f.size(); ++i) {
        BigRat m = abs(f[i] / f.back());
        if (m > B) B = m;
    }
    B = B + 1;
    struct Span {
        BigRat a, b;
        int va, vb;
    };
    std::vector<Span> stack{{-B, B, variations_at(seq, -B), variations_at(seq, B)}};
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        int count = s.va - s.vb;
        if (count <= 0) continue;
        if (count == 1 && sign_of(zp::eval(f, s.a)) * sign_of(zp::eval(f, s.b)) < 0) {
            out.push_back(RIv(s.a, s.b));
            continue;
        }
        BigRat m = (s.a + s.b) / 2;
        if (sign_of(zp::eval(f, m)) == 0) {
            out.push_back(RIv::point(m));
            // shrink the excluded gap until it holds no root besides m
            BigRat delta = (s.b - s.a) / 4;
            BigRat l, r;
            int vl, vr;
            for (;;) {
                l = m - delta;
                r = m + delta;
                while (sign_of(zp::eval(f, l)) == 0) l = (l + m) / 2;
                while (sign_of(zp::eval(f, r)) == 0) r = (m + r) / 2;
                vl = variations_at(seq, l);
                vr = variations_at(seq, r);
                if (vl - vr == 1) break;
                delta = delta / 4;
            }
            stack.push_back({s.a, l, s.va, vl});
            stack.push_back({r, s.b, vr, s.vb});
        } else {
            int vm = variations_at(seq, m);
            stack.push_back({s.a, m, s.va, vm});
            stack.push_back({m, s.b, vm, s.vb});
        }
    }
    std::sort(out.begin(), out.end(), [](const RIv& x, const RIv& y) { return x.lo < y.lo; });
    return out;
}

// shrink an isolating interval to width <= 2^-prec by bisection
inline RIv refine_real_root(const RatPoly& f, RIv box, long prec) {
    if (box.lo == box.hi) return box;
    BigRat target(1, BigInt(1) << prec);
    int sa = sign_of(zp::eval(f, box.lo));
    while (box.width() > target) {
        BigRat m = iv::round_nearest_dyadic((box.lo + box.hi) / 2, prec + 8);
        if (m <= box.lo || m >= box.hi) m = (box.lo + box.hi) / 2;
        int sm = sign_of(zp::eval(f, m));
        if (sm == 0) return RIv::point(m);
        if (sm == sa) box.lo = m;
        else box.hi = m;
    }
    return box;
}

// ---------- complex roots: Durand-Kerner seeds, Weierstrass certification ----------

using QC = std::pair<BigRat, BigRat>; // exact complex point

inline QC qc_sub(const QC& a, const QC& b) { return {a.first - b.first, a.second - b.second}; }
inline QC qc_mul(const QC& a, const QC& b) {
    return {a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first};
}
inline BigRat qc_mag2(const QC& a) { return a.first * a.first + a.second * a.second; }
inline QC qc_div(const QC& a, const QC& b) {
    BigRat m = qc_mag2(b);
    if (m == 0) raise(errc::division_by_zero, "complex division by zero");
    return {(a.first * b.first + a.second * b.second) / m,
            (a.second * b.first - a.first * b.second) / m};
}
inline QC qc_round(const QC& a, long prec) {
    return {round_nearest_dyadic(a.first, prec), round_nearest_dyadic(a.second, prec)};
}

inline QC qc_eval(const RatPoly& f, const QC& z) {
    QC v{BigRat(0), BigRat(0)};
    for (size_t i = f.size(); i-- > 0;) {
        v = qc_mul(v, z);
        v.first += f[i];
    }
    return v;
}

// least dyadic u = k/2^prec with u^2 >= x
inline BigRat sqrt_upper(const BigRat& x, long prec) {
    if (x <= 0) return BigRat(0);
    BigInt num = x.get_num() << (2 * prec);
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    BigInt k;
    mpz_sqrt(k.get_mpz_t(), c.get_mpz_t());
    if (k * k < c) k += 1;
    BigRat r(k, BigInt(1) << prec);
    r.canonicalize();
    return r;
}

// Weierstrass correction radii: every root of monic f lies in the union of
// the disks D(z_i, n*|W_i|); a set of pairwise disjoint disks holds exactly
// one root each.  Returns dyadic upper bounds for the radii.
inline std::vector<BigRat> weierstrass_radii(const RatPoly& f, const std::vector<QC>& z,
                                             long prec) {
    size_t n = z.size();
    std::vector<BigRat> u(n);
    for (size_t i = 0; i < n; ++i) {
        BigRat num = qc_mag2(qc_eval(f, z[i]));
        BigRat den = f.back() * f.back();
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            den *= qc_mag2(qc_sub(z[i], z[j]));
        }
        if (den == 0) return {}; // coincident approximations; caller escalates
        BigRat r2 = BigRat(static_cast<long>(n * n)) * num / den;
        u[i] = sqrt_upper(r2, prec);
    }
    return u;
}

inline bool disks_disjoint(const std::vector<QC>& z, const std::vector<BigRat>& u) {
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j) {
            BigRat s = u[i] + u[j];
            if (s * s >= qc_mag2(qc_sub(z[i], z[j]))) return false;
        }
    return true;
}

// double-precision Durand-Kerner to bootstrap the approximations
inline std::vector<std::complex<double>> dk_double(const RatPoly& f, uint64_t salt) {
    int n = zp::deg(f);
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = f[i].get_d();
    double R = 1.0;
    for (int i = 0; i < n; ++i) {
        double m = std::abs(c[i].real() / c[n].real());
        if (m > R) R = m;
    }
    R += 1.0;
    std::vector<std::complex<double>> z(n);
    for (int k = 0; k < n; ++k) {
        double phi = 6.283185307179586 * k / n + 0.7 + 1e-3 * static_cast<double>(salt % 97);
        z[k] = R * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    auto ev = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (int i = n; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = c[n];
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) == 0) continue;
            std::complex<double> w = ev(z[i]) / den;
            z[i] -= w;
            moved += std::abs(w);
        }
        if (moved < 1e-14) break;
    }
    return z;
}

} // namespace iv

// One archimedean place: a real isolating interval, or a certified box in
// the open upper half plane (its conjugate is implicit).
struct PlaceBox {
    bool is_real;
    RIv re;
    RIv im; // [0,0] for real places
};

// Certified enclosures for all archimedean places of a field, refined
// monotonically.  Snapshots are immutable; the field caches the latest.
struct FieldEmbeddings {
    long prec = 0;
    int r = 0, s = 0; // real places, complex pairs
    std::vector<PlaceBox> places;

    RatPoly f; // monic minimal polynomial
    std::vector<RIv> real_boxes;
    std::vector<iv::QC> cx; // upper-half approximations, order frozen
    long cx_prec = 0;
};

struct EmbeddingAccess {
    static std::shared_ptr<const FieldEmbeddings> get(const FieldPtr& F, long prec) {
        std::lock_guard<std::mutex> lk(F->embed_mu_);
        auto cur = std::static_pointer_cast<FieldEmbeddings>(F->embeddings_);
        if (cur && cur->prec >= prec) return cur;
        auto fresh = cur ? std::make_shared<FieldEmbeddings>(*cur)
                         : std::make_shared<FieldEmbeddings>();
        if (!cur) {
            fresh->f = F->min_poly();
            fresh->real_boxes = iv::isolate_real_roots(fresh->f);
            fresh->r = static_cast<int>(fresh->real_boxes.size());
            fresh->s = (F->degree() - fresh->r) / 2;
        }
        ensure(*fresh, prec);
        F->embeddings_ = fresh;
        return fresh;
    }

  private:
    static void ensure(FieldEmbeddings& E, long prec) {
        for (auto& b : E.real_boxes) b = iv::refine_real_root(E.f, b, prec + 4);
        if (E.s > 0) certify_complex(E, prec);
        E.places.clear();
        for (const auto& b : E.real_boxes) E.places.push_back({true, b, RIv::point(0)});
        if (E.s > 0) {
            // boxes of half-width u around the certified centers
            auto u = current_radii(E, prec);
            for (int i = 0; i < E.s; ++i) {
                const auto& [x, y] = E.cx[i];
                E.places.push_back({false, RIv(x - u[i], x + u[i]), RIv(y - u[i], y + u[i])});
            }
        }
        E.prec = prec;
    }

    static std::vector<iv::QC> full_point_set(const FieldEmbeddings& E) {
        std::vector<iv::QC> z;
        for (const auto& b : E.real_boxes) z.push_back({(b.lo + b.hi) / 2, BigRat(0)});
        for (const auto& p : E.cx) z.push_back(p);
        for (const auto& p : E.cx) z.push_back({p.first, -p.second});
        return z;
    }

    // radii for the upper-half points, aligned with E.cx
    static std::vector<BigRat> current_radii(const FieldEmbeddings& E, long prec) {
        auto z = full_point_set(E);
        auto u = iv::weierstrass_radii(E.f, z, prec + 4);
        return std::vector<BigRat>(u.begin() + E.r, u.begin() + E.r + E.s);
    }

    static void certify_complex(FieldEmbeddings& E, long prec) {
        long wp = std::max(E.cx_prec, prec + 48);
        BigRat target(1, BigInt(1) << (prec + 2));
        for (int attempt = 0;; ++attempt) {
            if (wp > (1L << 20)) raise(errc::bound_exceeded, "root refinement precision cap");
            if (E.cx.empty()) {
                // bootstrap from double-precision approximations
                for (uint64_t salt = 0; salt < 32; ++salt) {
                    auto zd = iv::dk_double(E.f, salt);
                    std::vector<iv::QC> up;
                    for (const auto& w : zd)
                        if (w.imag() > 1e-9)
                            up.push_back(iv::qc_round(
                                {BigRat(w.real()), BigRat(w.imag())}, wp));
                    if (static_cast<int>(up.size()) == E.s) {
                        std::sort(up.begin(), up.end(), [](const iv::QC& a, const iv::QC& b) {
                            if (a.first != b.first) return a.first < b.first;
                            return a.second < b.second;
                        });
                        E.cx = std::move(up);
                        break;
                    }
                }
                if (E.cx.empty())
                    raise(errc::verification_failed, "complex root bootstrap failed");
            }
            // Newton polish at working precision
            RatPoly fd = zp::derivative(E.f);
            for (int step = 0; step < 4; ++step) {
                for (auto& zi : E.cx) {
                    iv::QC dv = iv::qc_eval(fd, zi);
                    if (iv::qc_mag2(dv) == 0) {
                        zi.first += BigRat(1, BigInt(1) << wp);
                        dv = iv::qc_eval(fd, zi);
                    }
                    iv::QC nz = iv::qc_sub(zi, iv::qc_div(iv::qc_eval(E.f, zi), dv));
                    zi = iv::qc_round(nz, wp);
                }
            }
            auto z = full_point_set(E);
            auto u = iv::weierstrass_radii(E.f, z, prec + 4);
            if (!u.empty() && iv::disks_disjoint(z, u)) {
                bool tight = true;
                for (int i = 0; i < E.s; ++i)
                    if (u[E.r + i] > target) { tight = false; break; }
                // upper-half boxes must stay off the real axis
                for (int i = 0; i < E.s && tight; ++i)
                    if (E.cx[i].second <= u[E.r + i]) tight = false;
                if (tight) {
                    E.cx_prec = wp;
                    return;
                }
            }
            wp *= 2;
        }
    }
};

// evaluate an element at a place, every step rounded outward
inline CBox eval_box(const NFElement& a, const PlaceBox& P, long prec) {
    long guard = prec + 8;
    CBox z{P.re, P.im};
    CBox v{RIv::point(0), RIv::point(0)};
    const RatPoly& c = a.coords();
    for (size_t i = c.size(); i-- > 0;) {
        v = (v * z).round_out(guard);
        v.re = v.re + RIv::point(c[i]);
    }
    return v.round_out(prec);
}

} // namespace hroot
