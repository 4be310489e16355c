#include <catch2/catch_amalgamated.hpp>

#include "hroot/fields.hpp"
#include "hroot/power.hpp"

using namespace hroot;

namespace {

RatPoly rp(std::initializer_list<long> cs) {
    RatPoly p;
    for (long c : cs) p.push_back(BigRat(c));
    zp::normalize(p);
    return p;
}

UniPoly upoly(const FieldPtr& F, std::initializer_list<long> cs) {
    UniPoly p{F, {}};
    for (long c : cs) p.c.push_back(NFElement::of(F, c));
    p.normalize();
    return p;
}

} // namespace

TEST_CASE("laurent arithmetic with negative exponents") {
    auto Q = NumberField::rationals();
    auto one = NFElement::one(Q);
    // y + 1/y in variables (x0, y)
    Laurent a = lp::monomial(Q, 2, {0, 1}, one);
    a = lp::add(a, lp::monomial(Q, 2, {0, -1}, one));
    Laurent sq = lp::pow(a, 2);
    Laurent expect = lp::monomial(Q, 2, {0, 2}, one);
    expect = lp::add(expect, lp::constant(Q, 2, NFElement::of(Q, 2L)));
    expect = lp::add(expect, lp::monomial(Q, 2, {0, -2}, one));
    REQUIRE(sq == expect);
    REQUIRE(lp::is_zero(lp::sub(sq, expect)));
    REQUIRE(!lp::is_zero(sq));

    // cancellation removes terms
    Laurent b = lp::sub(a, lp::monomial(Q, 2, {0, 1}, one));
    REQUIRE(b.terms.size() == 1);
    REQUIRE(b.terms.begin()->first == std::vector<long long>{0, -1});

    REQUIRE_THROWS_AS(lp::pow(a, -1), Error);
    REQUIRE_THROWS_AS(lp::insert_add(a, {0, 0, 0}, one), Error);
}

TEST_CASE("laurent exponent ranges and shifting") {
    auto Q = NumberField::rationals();
    auto one = NFElement::one(Q);
    Laurent f = lp::monomial(Q, 3, {2, -1, 4}, one);
    f = lp::add(f, lp::monomial(Q, 3, {1, 3, -2}, NFElement::of(Q, 5L)));
    REQUIRE(lp::min_exponents(f) == std::vector<long long>{1, -1, -2});
    REQUIRE(lp::max_exponents(f) == std::vector<long long>{2, 3, 4});
    Laurent g = lp::shift(f, {-1, 1, 2});
    REQUIRE(lp::min_exponents(g) == std::vector<long long>{0, 0, 0});
    REQUIRE(lp::shift(g, {1, -1, -2}) == f);
    REQUIRE_THROWS_AS(lp::min_exponents(lp::zero(Q, 2)), Error);
}

TEST_CASE("kronecker packing round trip") {
    auto Q = NumberField::rationals();
    Laurent f = lp::monomial(Q, 2, {0, 0}, NFElement::of(Q, 7L));
    lp::insert_add(f, {3, 0}, NFElement::of(Q, -2L));
    lp::insert_add(f, {1, 2}, NFElement::of(Q, 9L));
    lp::insert_add(f, {4, 4}, NFElement::of(Q, 1L));
    long long M = 5;
    UniPoly p = lp::kron_pack(f, M);
    REQUIRE(p.deg() == 4 + 4 * 5);
    REQUIRE(lp::kron_unpack(p, 2, M) == f);
    REQUIRE_THROWS_AS(lp::kron_pack(f, 4), Error); // exponent 4 out of range
}

TEST_CASE("univariate root recovery") {
    auto Q = NumberField::rationals();
    // (x^2 + 3x + 1)^2
    UniPoly h = upoly(Q, {1, 3, 1});
    auto r2 = uni_dth_root(up::pow(h, 2), 2);
    REQUIRE(r2.has_value());
    REQUIRE(*r2 == h);
    // (x + 2)^3
    UniPoly l = upoly(Q, {2, 1});
    auto r3 = uni_dth_root(up::pow(l, 3), 3);
    REQUIRE(r3.has_value());
    REQUIRE(*r3 == l);
    // pure powers of x (zero constant term goes through the reversal)
    auto rx = uni_dth_root(upoly(Q, {0, 0, 1}), 2);
    REQUIRE(rx.has_value());
    REQUIRE(*rx == upoly(Q, {0, 1}));
    // x^2 (x+1)^2
    auto rm = uni_dth_root(up::pow(upoly(Q, {0, 1, 1}), 2), 2);
    REQUIRE(rm.has_value());
    REQUIRE(*rm == upoly(Q, {0, 1, 1}));
    // non-powers
    REQUIRE(!uni_dth_root(upoly(Q, {1, 0, 1}), 2).has_value());
    REQUIRE(!uni_dth_root(upoly(Q, {0, 0, 0, 0, 0, 1}), 4).has_value());
    REQUIRE(!uni_dth_root(upoly(Q, {1, 2, 1}), 3).has_value()); // degree mismatch
    REQUIRE(uni_dth_root(upoly(Q, {5, 1}), 1).has_value());
    REQUIRE_THROWS_AS(uni_dth_root(upoly(Q, {1, 2}), 2), Error); // not monic
}

TEST_CASE("univariate root over a quadratic field") {
    auto K = NumberField::make(rp({-2, 0, 1})); // x^2 - 2
    auto s = NFElement::gen(K);
    UniPoly h{K, {s, NFElement::one(K)}}; // x + sqrt(2)
    auto r = uni_dth_root(up::pow(h, 2), 2);
    REQUIRE(r.has_value());
    REQUIRE(*r == h);
    // d-th root of a power stays rational when it should
    UniPoly g{K, {NFElement::of(K, 1L), s}}; // s x + 1, not monic
    REQUIRE_THROWS_AS(uni_dth_root(g, 2), Error);
}

TEST_CASE("monomial power decomposition") {
    auto Q = NumberField::rationals();
    auto one = NFElement::one(Q);
    Laurent H = lp::monomial(Q, 2, {1, 0}, one); // x0 + x1
    H = lp::add(H, lp::monomial(Q, 2, {0, 1}, one));

    // f = 2 x1^2 (x0 + x1)^2
    Laurent f = lp::scale(lp::shift(lp::pow(H, 2), {0, 2}), NFElement::of(Q, 2L));
    auto m = monomial_power_decompose(f, 2);
    REQUIRE(m.has_value());
    REQUIRE(m->shift == std::vector<long long>{0, 2});
    REQUIRE(m->unit == NFElement::of(Q, 2L));
    REQUIRE(m->root == H);
    // the decomposition reassembles to f
    Laurent back = lp::scale(lp::shift(lp::pow(m->root, 2), m->shift), m->unit);
    REQUIRE(back == f);

    // unit absorbs non-normalized scaling: 8 (2 x0 + 2 x1)^2 = 32 (x0+x1)^2
    Laurent g = lp::scale(lp::pow(lp::scale(H, NFElement::of(Q, 2L)), 2), NFElement::of(Q, 8L));
    auto mg = monomial_power_decompose(g, 2);
    REQUIRE(mg.has_value());
    REQUIRE(mg->unit == NFElement::of(Q, 32L));
    REQUIRE(mg->root == H);

    // negative exponents on the invertible variable
    Laurent neg = lp::shift(lp::pow(H, 2), {0, -4});
    auto mn = monomial_power_decompose(neg, 2);
    REQUIRE(mn.has_value());
    REQUIRE(mn->shift == std::vector<long long>{0, -4});
    REQUIRE(mn->root == H);

    // odd shift on the first variable blocks the root
    Laurent h1 = lp::shift(lp::pow(H, 2), {1, 0});
    REQUIRE(!monomial_power_decompose(h1, 2).has_value());
    // odd shift on an invertible variable is fine
    Laurent h2 = lp::shift(lp::pow(H, 2), {0, 1});
    REQUIRE(monomial_power_decompose(h2, 2).has_value());

    // non-powers
    REQUIRE(!monomial_power_decompose(H, 2).has_value());
    Laurent s2 = lp::add(lp::monomial(Q, 2, {2, 0}, one), lp::monomial(Q, 2, {0, 2}, one));
    REQUIRE(!monomial_power_decompose(s2, 2).has_value());

    // d = 1 is the trivial decomposition
    auto m1 = monomial_power_decompose(f, 1);
    REQUIRE(m1.has_value());
    REQUIRE(lp::scale(lp::shift(m1->root, m1->shift), m1->unit) == f);

    REQUIRE_THROWS_AS(monomial_power_decompose(lp::zero(Q, 2), 2), Error);
}

TEST_CASE("monomial power decomposition over an imaginary field") {
    auto K = NumberField::make(rp({1, 0, 1})); // x^2 + 1
    auto i = NFElement::gen(K);
    Laurent H = lp::monomial(K, 2, {0, 1}, NFElement::one(K));
    H = lp::add(H, lp::constant(K, 2, i)); // x1 + i
    Laurent f = lp::scale(lp::pow(H, 2), -NFElement::one(K));
    auto m = monomial_power_decompose(f, 2);
    REQUIRE(m.has_value());
    REQUIRE(m->unit == -NFElement::one(K));
    REQUIRE(m->root == H);
    REQUIRE(m->shift == std::vector<long long>{0, 0});

    // cube with a unit that is not a cube in K
    Laurent f3 = lp::scale(lp::pow(H, 3), NFElement::of(K, 2L));
    auto m3 = monomial_power_decompose(f3, 3);
    REQUIRE(m3.has_value());
    REQUIRE(m3->unit == NFElement::of(K, 2L));
    REQUIRE(m3->root == H);
}
