#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "modpoly.hpp"
#include "zlinalg.hpp"
#include "zpoly.hpp"

namespace hroot {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A number field Q[t]/(m) with m monic irreducible.  Instances are immutable
// and shared; two instances describe the same field iff their minimal
// polynomials agree.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    // The rational field, canonically Q[t]/(t - 1).
    static FieldPtr rationals() {
        static FieldPtr q = FieldPtr(new NumberField(RatPoly{BigRat(-1), BigRat(1)}, "t", 2));
        return q;
    }

    // Validates irreducibility (unless the caller vouches for it) and
    // computes the torsion order; defined with the field-tower machinery.
    static FieldPtr make(RatPoly min_poly, const std::string& var = "t",
                         bool trusted_irreducible = false);

    int degree() const { return deg_; }
    const RatPoly& min_poly() const { return min_poly_; }
    const IntPoly& min_poly_int() const { return min_poly_int_; }
    const std::string& var() const { return var_; }
    const BigInt& disc() const { return disc_; }
    // number of roots of unity in the field (always even)
    long torsion_order() const { return w_; }
    bool is_rational_field() const { return deg_ == 1; }

    // coordinates of theta^(degree + j), j = 0 .. degree - 2
    const std::vector<RatPoly>& power_table() const { return theta_pow_; }

    // reduce a coordinate polynomial of any degree mod the minimal polynomial
    RatPoly reduce(RatPoly p) const {
        while (zp::deg(p) >= deg_) {
            int k = zp::deg(p);
            BigRat c = p.back();
            p.pop_back();
            const RatPoly& row = theta_pow_[k - deg_];
            if (p.size() < row.size()) p.resize(row.size());
            for (size_t i = 0; i < row.size(); ++i) p[i] += c * row[i];
            zp::normalize(p);
        }
        return p;
    }

    static bool same(const NumberField& a, const NumberField& b) {
        return &a == &b || a.min_poly_ == b.min_poly_;
    }

  private:
    NumberField(RatPoly mp, std::string var, long w)
        : min_poly_(std::move(mp)), var_(std::move(var)), w_(w) {
        deg_ = zp::deg(min_poly_);
        min_poly_int_ = zp::primitive(min_poly_);
        // disc = (-1)^(n(n-1)/2) res(f, f') / lc(f) on the primitive form
        RatPoly f = zp::from_int(min_poly_int_);
        BigRat r = zp::resultant(f, zp::derivative(f));
        if ((static_cast<long>(deg_) * (deg_ - 1) / 2) % 2 == 1) r = -r;
        r /= BigRat(min_poly_int_.back());
        disc_ = r.get_num(); // exact integer for integral f
        if (deg_ > 1) {
            theta_pow_.resize(deg_ - 1);
            // theta^deg = -(lower terms of m); then multiply by theta repeatedly
            RatPoly cur(min_poly_.begin(), min_poly_.end() - 1);
            for (auto& c : cur) c = -c;
            zp::normalize(cur);
            for (int j = 0; j + 1 < deg_; ++j) {
                theta_pow_[j] = cur;
                RatPoly nxt = zp::shift_up(cur, 1);
                if (zp::deg(nxt) >= deg_) {
                    BigRat c = nxt.back();
                    nxt.pop_back();
                    for (int i = 0; i < deg_; ++i) nxt[i] -= c * min_poly_[i];
                    zp::normalize(nxt);
                }
                cur = std::move(nxt);
            }
        }
    }

    RatPoly min_poly_;
    IntPoly min_poly_int_;
    std::string var_;
    int deg_ = 0;
    BigInt disc_;
    long w_ = 2;
    std::vector<RatPoly> theta_pow_;

    // lazily built embedding data, type-erased to keep this header light
    mutable std::mutex embed_mu_;
    mutable std::shared_ptr<void> embeddings_;
    friend struct EmbeddingAccess;
};

inline void check_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!NumberField::same(*a, *b)) raise(errc::field_mismatch, "elements of different fields");
}

// Element of a number field: coordinates in the power basis, low degree first,
// trailing zeros stripped.
class NFElement {
  public:
    NFElement() = default;

    NFElement(FieldPtr F, RatPoly coords) : F_(std::move(F)), c_(std::move(coords)) {
        zp::normalize(c_);
        if (zp::deg(c_) >= F_->degree()) raise(errc::invalid_argument, "coords out of range");
    }

    static NFElement zero(FieldPtr F) { return NFElement(std::move(F), RatPoly{}); }
    static NFElement one(FieldPtr F) { return NFElement(std::move(F), RatPoly{BigRat(1)}); }
    static NFElement of(FieldPtr F, BigRat q) {
        return NFElement(std::move(F), q == 0 ? RatPoly{} : RatPoly{std::move(q)});
    }
    static NFElement of(FieldPtr F, long v) { return of(std::move(F), BigRat(v)); }
    static NFElement gen(FieldPtr F) {
        if (F->degree() == 1) {
            BigRat a = -F->min_poly()[0]; // the root of a linear modulus
            return of(std::move(F), a);
        }
        return NFElement(std::move(F), RatPoly{BigRat(0), BigRat(1)});
    }

    const FieldPtr& field() const { return F_; }
    const RatPoly& coords() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_rational() const { return c_.size() <= 1; }
    BigRat to_rational() const {
        if (!is_rational()) raise(errc::invalid_argument, "element not rational");
        return c_.empty() ? BigRat(0) : c_[0];
    }

    friend NFElement operator+(const NFElement& a, const NFElement& b) {
        check_same_field(a.F_, b.F_);
        return NFElement(a.F_, zp::add(a.c_, b.c_));
    }
    friend NFElement operator-(const NFElement& a, const NFElement& b) {
        check_same_field(a.F_, b.F_);
        return NFElement(a.F_, zp::sub(a.c_, b.c_));
    }
    NFElement operator-() const { return NFElement(F_, zp::neg(c_)); }
    friend NFElement operator*(const NFElement& a, const NFElement& b) {
        check_same_field(a.F_, b.F_);
        return NFElement(a.F_, a.F_->reduce(zp::mul(a.c_, b.c_)));
    }
    friend NFElement operator*(const NFElement& a, const BigRat& q) {
        return NFElement(a.F_, zp::scale(a.c_, q));
    }
    friend NFElement operator*(const BigRat& q, const NFElement& a) { return a * q; }
    friend NFElement operator/(const NFElement& a, const NFElement& b) { return a * b.inv(); }

    NFElement& operator+=(const NFElement& o) { return *this = *this + o; }
    NFElement& operator-=(const NFElement& o) { return *this = *this - o; }
    NFElement& operator*=(const NFElement& o) { return *this = *this * o; }

    NFElement inv() const {
        if (is_zero()) raise(errc::division_by_zero, "inverse of zero");
        // extended Euclid with the minimal polynomial
        RatPoly r0 = F_->min_poly(), r1 = c_;
        RatPoly t0{}, t1{BigRat(1)};
        while (zp::deg(r1) > 0) {
            auto [q, r] = zp::divmod(r0, r1);
            RatPoly t2 = zp::sub(t0, zp::mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r1.empty()) raise(errc::reducible, "zero divisor; modulus not irreducible");
        BigRat ic = BigRat(1) / r1[0];
        return NFElement(F_, F_->reduce(zp::scale(t1, ic)));
    }

    NFElement pow(long e) const {
        if (e < 0) return inv().pow(-e);
        NFElement r = one(F_), b = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r = r * b;
            b = b * b;
            u >>= 1;
        }
        return r;
    }

    friend bool operator==(const NFElement& a, const NFElement& b) {
        check_same_field(a.F_, b.F_);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

    // total order for canonical sorting: degree, then coords from the top
    static int cmp(const NFElement& a, const NFElement& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
        for (size_t i = a.c_.size(); i-- > 0;) {
            int c = ::cmp(a.c_[i], b.c_[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    friend bool operator<(const NFElement& a, const NFElement& b) { return cmp(a, b) < 0; }

  private:
    FieldPtr F_;
    RatPoly c_;
};

// Minimal polynomial of an element, monic (irreducible by minimality).
inline RatPoly minpoly_of_element(const NFElement& a) {
    int n = a.field()->degree();
    la::RowReducer rr(static_cast<size_t>(n));
    NFElement p = NFElement::one(a.field());
    for (int k = 0; k <= n; ++k) {
        QVec v(static_cast<size_t>(n));
        const RatPoly& c = p.coords();
        for (size_t i = 0; i < c.size(); ++i) v[i] = c[i];
        if (auto dep = rr.feed(std::move(v))) {
            RatPoly mu(dep->begin(), dep->end());
            zp::normalize(mu);
            return mu; // last coefficient is 1 by construction
        }
        p = p * a;
    }
    raise(errc::verification_failed, "power basis spans more than the field degree");
}

// Field norm N(a) via the minimal polynomial: ((-1)^m mu(0))^(n/m).
inline BigRat norm(const NFElement& a) {
    if (a.is_zero()) return BigRat(0);
    RatPoly mu = minpoly_of_element(a);
    int m = zp::deg(mu);
    int n = a.field()->degree();
    BigRat v = mu[0];
    if (m % 2 == 1) v = -v;
    return pow(v, n / m);
}

// Image of an element in F_p under theta -> r, where r is a root of the
// primitive minimal polynomial mod p.  Denominators must be units mod p.
inline uint64_t reduce_element(const NFElement& a, const Fp& F, uint64_t r) {
    uint64_t v = 0;
    const RatPoly& c = a.coords();
    for (size_t i = c.size(); i-- > 0;) v = F.add(F.mul(v, r), F.reduce(c[i]));
    return v;
}

} // namespace hroot
