#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "factor_q.hpp"
#include "unipoly.hpp"

namespace hroot {
namespace nf {

// g with theta replaced by the indeterminate y: a polynomial in x whose
// coefficients are polynomials in y (coordinate polynomials, unreduced).
// Specialized at x = v: returns the polynomial in y.
inline RatPoly specialize_x(const UniPoly& g, const BigRat& v, const BigRat& c) {
    // computes G(v - c*y, y): sum_i coords_i(y) * (v - c*y)^i
    RatPoly acc;          // result, poly in y
    RatPoly base{v, -c};  // v - c*y
    zp::normalize(base);
    RatPoly basepow{BigRat(1)};
    for (size_t i = 0; i < g.c.size(); ++i) {
        const RatPoly& coords = g.c[i].coords();
        acc = zp::add(acc, zp::mul(coords, basepow));
        if (i + 1 < g.c.size()) basepow = zp::mul(basepow, base);
    }
    return acc;
}

// Norm polynomial N_c(x) = Res_y(m(y), G(x - c*y, y)) by evaluation and
// interpolation; degree is deg(g) * [K:Q] exactly (m monic).
inline RatPoly norm_poly(const UniPoly& g, const BigRat& c) {
    const FieldPtr& K = g.F;
    int n = K->degree();
    int D = g.deg() * n;
    std::vector<BigRat> xs, ys;
    xs.reserve(D + 1);
    ys.reserve(D + 1);
    for (long v = 0; static_cast<int>(xs.size()) <= D; ++v) {
        BigRat xv(v);
        RatPoly hy = specialize_x(g, xv, c);
        // m monic: Res_y(m, hy) = prod hy(roots of m); no degree-drop issue
        BigRat r = zp::resultant(K->min_poly(), hy);
        xs.push_back(xv);
        ys.push_back(r);
    }
    return zp::interpolate(xs, ys);
}

} // namespace nf

// Irreducible monic factors over the coefficient field, with multiplicities,
// sorted by degree then coefficient sequence.  Input need not be monic.
inline std::vector<std::pair<UniPoly, int>> uni_factor_NF(const UniPoly& f0) {
    const FieldPtr& K = f0.F;
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly f = f0;
    f.normalize();
    if (f.deg() < 1) return out;

    if (K->is_rational_field()) {
        for (auto& [g, m] : factor_over_Q(f.to_rat()))
            out.push_back({UniPoly::from_rat(K, g), m});
        return out;
    }

    for (auto& [part, mult] : up::squarefree(f)) {
        if (part.deg() == 1) {
            out.push_back({part, mult});
            continue;
        }
        // shift x -> x - c*theta until the norm polynomial is squarefree
        RatPoly N;
        BigRat c;
        for (long ci = 0;; ++ci) {
            // try 0, 1, -1, 2, -2, ...
            c = BigRat((ci % 2 == 0) ? ci / 2 : -(ci / 2 + 1));
            N = nf::norm_poly(part, c);
            if (zp::deg(zp::gcd(N, zp::derivative(N))) == 0) break;
            if (ci > 4 * N.size()) raise(errc::verification_failed, "no squarefree shift found");
        }
        NFElement ctheta = NFElement::gen(K) * c;
        auto nf_factors = factor_over_Q(N);
        std::vector<UniPoly> parts;
        for (auto& [Ni, m] : nf_factors) {
            (void)m; // squarefree norm: multiplicity 1
            // factor of `part` is gcd(part, Ni(x + c*theta))
            UniPoly shifted = up::compose(UniPoly::from_rat(K, Ni),
                                          up::add(UniPoly::x(K), UniPoly::constant(K, ctheta)));
            UniPoly gi = up::gcd_poly(part, shifted);
            if (gi.deg() > 0) parts.push_back(gi);
        }
        // verify the factorization multiplies back
        UniPoly prod = UniPoly::constant(K, NFElement::one(K));
        for (const auto& g : parts) prod = up::mul(prod, g);
        if (up::cmp(prod, part) != 0)
            raise(errc::verification_failed, "norm factorization did not split the input");
        for (auto& g : parts) out.push_back({g, mult});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = up::cmp(a.first, b.first);
        if (c != 0) return c < 0;
        return a.second < b.second;
    });
    return out;
}

// Roots of f lying in its coefficient field, with multiplicities, sorted.
inline std::vector<std::pair<NFElement, int>> roots_in_field(const UniPoly& f) {
    std::vector<std::pair<NFElement, int>> out;
    for (auto& [g, m] : uni_factor_NF(f))
        if (g.deg() == 1) out.push_back({-g.c[0], m});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return NFElement::cmp(a.first, b.first) < 0;
    });
    return out;
}

} // namespace hroot
