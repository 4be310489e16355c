#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace hroot {

// Arbitrary-precision scalars.  BigRat is always canonical: lowest terms,
// positive denominator, unique zero.  GMP maintains this for every operation
// as long as inputs are canonical, which the constructors below guarantee.
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigRat rat(const BigInt& num, const BigInt& den) {
    if (den == 0) raise(errc::division_by_zero, "rational with zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline BigRat pow(const BigRat& base, long e) {
    if (e == 0) return BigRat(1);
    if (base == 0) {
        if (e < 0) raise(errc::division_by_zero, "0 raised to negative power");
        return BigRat(0);
    }
    BigRat r;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), ae);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), ae);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
        // numerator sign convention restored by canonicalize below
    }
    r.canonicalize();
    return r;
}

// |x| as a BigRat.
inline BigRat abs(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

inline bool fits_long(const BigInt& x) { return x.fits_slong_p(); }

inline long to_long(const BigInt& x) {
    if (!x.fits_slong_p()) raise(errc::bound_exceeded, "integer does not fit machine word");
    return x.get_si();
}

// --- string I/O ------------------------------------------------------------

// Canonical form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string rat_to_string(const BigRat& x) { return x.get_str(); }

inline BigRat rat_from_string(const std::string& s) {
    if (s.empty()) raise(errc::parse_error, "empty rational literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            raise(errc::parse_error, "bad rational literal: " + s);
    BigRat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        raise(errc::parse_error, "bad rational literal: " + s);
    if (q.get_den() == 0) raise(errc::parse_error, "zero denominator in literal: " + s);
    q.canonicalize();
    return q;
}

// --- primes ----------------------------------------------------------------

inline bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; // exact for word-size inputs
}

inline std::uint64_t next_prime(std::uint64_t n) {
    BigInt r;
    BigInt m(static_cast<unsigned long>(n));
    mpz_nextprime(r.get_mpz_t(), m.get_mpz_t());
    return r.get_ui();
}

// Complete factorization of |n| by trial division.  Returns std::nullopt if a
// cofactor above bound*bound survives with no divisor <= bound (the caller
// decides whether that is an error).  n must be nonzero.
inline std::optional<std::map<BigInt, long>> trial_factor(BigInt n, long long bound) {
    if (n == 0) raise(errc::invalid_argument, "factoring zero");
    if (n < 0) n = -n;
    std::map<BigInt, long> out;
    auto strip = [&](const BigInt& p) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            out[p]++;
        }
    };
    strip(BigInt(2));
    BigInt p = 3;
    BigInt pmax(static_cast<long>(bound));
    while (n > 1 && p <= pmax && p * p <= n) {
        strip(p);
        p += 2;
    }
    if (n > 1) {
        if (n <= pmax || is_prime(n)) {
            out[n]++;
        } else {
            return std::nullopt; // composite cofactor out of reach
        }
    }
    return out;
}

// Euler phi for machine integers (trial division; used for cyclotomic scans).
inline long euler_phi(long s) {
    long r = s;
    for (long p = 2; p * p <= s; ++p) {
        if (s % p == 0) {
            r -= r / p;
            while (s % p == 0) s /= p;
        }
    }
    if (s > 1) r -= r / s;
    return r;
}

// Deterministic 64-bit mixer; all "random" choices in the library derive from
// this so identical inputs give identical outputs.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

} // namespace hroot
