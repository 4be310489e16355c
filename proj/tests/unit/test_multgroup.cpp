#include <catch2/catch_amalgamated.hpp>

#include "hroot/multgroup.hpp"

using namespace hroot;

namespace {

FieldPtr Q() { return NumberField::rationals(); }

NFElement q(const FieldPtr& F, long n, long d = 1) {
    return NFElement::of(F, rat(BigInt(n), BigInt(d)));
}

UniPoly upoly(const FieldPtr& F, std::initializer_list<long> cs) {
    std::vector<NFElement> c;
    for (long v : cs) c.push_back(q(F, v));
    return UniPoly(F, std::move(c));
}

IVec ivec(std::initializer_list<long> vs) {
    IVec out;
    for (long v : vs) out.push_back(BigInt(v));
    return out;
}

IMat imat(std::initializer_list<std::initializer_list<long>> rows) {
    IMat out;
    for (const auto& r : rows) out.push_back(ivec(r));
    return out;
}

NFElement lau_eval(const Laurent& f, const std::vector<NFElement>& pt) {
    REQUIRE(pt.size() == f.nvars);
    NFElement s = NFElement::of(f.F, 0);
    for (const auto& [e, c] : f.terms) {
        NFElement m = c;
        for (size_t i = 0; i < e.size(); ++i) m = m * pt[i].pow(static_cast<long>(e[i]));
        s += m;
    }
    return s;
}

void check_lattice(const std::vector<NFElement>& g, const IMat& expect) {
    RelationLattice L = relation_lattice(g);
    REQUIRE(L.basis == expect);
    for (const auto& e : L.basis) REQUIRE(eval_relation(g, e).is_one());
}

void check_presentation(const std::vector<NFElement>& betas, const GroupPresentation& P) {
    REQUIRE(P.E.size() == betas.size());
    for (size_t i = 0; i < betas.size(); ++i) {
        NFElement lhs = betas[i].pow(P.N);
        REQUIRE(lhs == eval_relation(P.gammas, P.E[i]));
    }
    for (const auto& g : P.gammas) REQUIRE_FALSE(is_root_of_unity(g).has_value());
}

} // namespace

TEST_CASE("orders of roots of unity") {
    auto F = Q();
    REQUIRE(is_root_of_unity(q(F, 1)) == 1);
    REQUIRE(is_root_of_unity(q(F, -1)) == 2);
    REQUIRE_FALSE(is_root_of_unity(q(F, 2)).has_value());
    REQUIRE_FALSE(is_root_of_unity(q(F, -5, 7)).has_value());
    REQUIRE_THROWS_AS(is_root_of_unity(q(F, 0)), Error);

    AdjoinResult gi = adjoin_root(F, upoly(F, {1, 0, 1}));
    NFElement i = gi.root;
    REQUIRE(is_root_of_unity(i) == 4);
    REQUIRE(is_root_of_unity(-i) == 4);
    REQUIRE(is_root_of_unity(i * i) == 2);
    REQUIRE_FALSE(is_root_of_unity(i + NFElement::one(gi.field)).has_value());

    AdjoinResult gz = adjoin_root(F, upoly(F, {1, 1, 1}));
    REQUIRE(is_root_of_unity(gz.root) == 3);
    REQUIRE(is_root_of_unity(-gz.root) == 6);
}

TEST_CASE("torsion exponent of the base field") {
    auto F = Q();
    REQUIRE(torsion_exponent({q(F, 9), q(F, -9)}) == 2);
    AdjoinResult gi = adjoin_root(F, upoly(F, {1, 0, 1}));
    REQUIRE(torsion_exponent({gi.root}) == 4);
    AdjoinResult gz = adjoin_root(F, upoly(F, {1, 1, 1}));
    REQUIRE(torsion_exponent({gz.root}) == 6);
    REQUIRE_THROWS_AS(torsion_exponent({q(F, 0)}), Error);
    REQUIRE_THROWS_AS(torsion_exponent({}), Error);
}

TEST_CASE("rational relation lattices") {
    auto F = Q();
    check_lattice({q(F, 2), q(F, 3)}, {});
    check_lattice({q(F, 5), q(F, 7), q(F, 11)}, {});
    check_lattice({q(F, 6), q(F, 10), q(F, 15)}, {});
    check_lattice({q(F, 12), q(F, 18)}, {});
    check_lattice({q(F, 2), q(F, 3), q(F, 6)}, imat({{1, 1, -1}}));
    check_lattice({q(F, 4), q(F, 8)}, imat({{3, -2}}));
    check_lattice({q(F, 4), q(F, 2)}, imat({{1, -2}}));
    check_lattice({q(F, 8), q(F, 32)}, imat({{5, -3}}));

    SECTION("signs are part of the group") {
        check_lattice({q(F, 2), q(F, -2)}, imat({{2, -2}}));
        check_lattice({q(F, -2), q(F, -8)}, imat({{3, -1}}));
        check_lattice({q(F, 2), q(F, -4)}, imat({{4, -2}}));
    }

    SECTION("rationals with denominators") {
        check_lattice({q(F, 2, 3), q(F, 9, 4)}, imat({{2, 1}}));
        check_lattice({q(F, 2, 3), q(F, 5)}, {});
    }

    SECTION("invalid input is rejected") {
        REQUIRE(relation_lattice({}).basis.empty());
        REQUIRE_THROWS_AS(relation_lattice({q(F, 0)}), Error);
        REQUIRE_THROWS_AS(relation_lattice({q(F, -1)}), Error);
        REQUIRE_THROWS_AS(eval_relation({q(F, 2)}, ivec({1, 2})), Error);
    }
}

TEST_CASE("relations in a real quadratic field") {
    auto F = Q();
    AdjoinResult g2 = adjoin_root(F, upoly(F, {-2, 0, 1}));
    const FieldPtr& K = g2.field;
    NFElement s2 = g2.root;
    NFElement one = NFElement::one(K);
    NFElement two = q(K, 2);

    SECTION("square root against its square") {
        check_lattice({s2, two}, imat({{2, -1}}));
    }
    SECTION("a fundamental unit has no relations") {
        check_lattice({q(K, 3) + s2 + s2}, {});
    }
    SECTION("unit against its square") {
        NFElement u = one + s2;
        check_lattice({u, u * u}, imat({{2, -1}}));
    }
    SECTION("independent pair stays independent") {
        check_lattice({s2, one + s2}, {});
    }
}

TEST_CASE("relations through torsion in an imaginary quadratic field") {
    auto F = Q();
    AdjoinResult gi = adjoin_root(F, upoly(F, {1, 0, 1}));
    const FieldPtr& K = gi.field;
    NFElement i = gi.root;
    NFElement two = q(K, 2);

    // 2i/2 = i has order four, so the smallest true relation is the fourth power
    check_lattice({two * i, two}, imat({{4, -4}}));
}

TEST_CASE("free presentation with prime generators") {
    auto F = Q();

    GroupPresentation P = free_presentation({q(F, 4), q(F, 6), q(F, 9)});
    REQUIRE(P.N == 2);
    REQUIRE(P.gammas == std::vector<NFElement>{q(F, 2), q(F, 3)});
    REQUIRE(P.E == imat({{4, 0}, {2, 2}, {0, 4}}));
    check_presentation({q(F, 4), q(F, 6), q(F, 9)}, P);

    GroupPresentation P1 = free_presentation({q(F, 2)});
    REQUIRE(P1.N == 2);
    REQUIRE(P1.gammas == std::vector<NFElement>{q(F, 2)});
    REQUIRE(P1.E == imat({{2}}));

    GroupPresentation P2 = free_presentation({q(F, 6), q(F, 10), q(F, 15)});
    REQUIRE(P2.gammas == std::vector<NFElement>{q(F, 2), q(F, 3), q(F, 5)});
    REQUIRE(P2.E == imat({{2, 2, 0}, {2, 0, 2}, {0, 2, 2}}));
    check_presentation({q(F, 6), q(F, 10), q(F, 15)}, P2);

    SECTION("sign dies with the torsion exponent") {
        GroupPresentation P3 = free_presentation({q(F, 9), q(F, -9)});
        REQUIRE(P3.N == 2);
        REQUIRE(P3.gammas == std::vector<NFElement>{q(F, 3)});
        REQUIRE(P3.E == imat({{4}, {4}}));
        check_presentation({q(F, 9), q(F, -9)}, P3);
    }
    SECTION("denominators give negative exponents") {
        GroupPresentation P4 = free_presentation({q(F, 2, 3)});
        REQUIRE(P4.gammas == std::vector<NFElement>{q(F, 2), q(F, 3)});
        REQUIRE(P4.E == imat({{2, -2}}));
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(free_presentation({}), Error);
        REQUIRE_THROWS_AS(free_presentation({q(F, 0)}), Error);
    }
}

TEST_CASE("free presentation with torsion and irrational bases") {
    auto F = Q();

    SECTION("torsion bases contribute zero rows") {
        AdjoinResult gi = adjoin_root(F, upoly(F, {1, 0, 1}));
        const FieldPtr& K = gi.field;
        GroupPresentation P = free_presentation({gi.root, q(K, 2)});
        REQUIRE(P.N == 4);
        REQUIRE(P.gammas == std::vector<NFElement>{q(K, 2)});
        REQUIRE(P.E == imat({{0}, {4}}));
        check_presentation({gi.root, q(K, 2)}, P);
    }
    SECTION("negative rational power falls back to the quotient construction") {
        AdjoinResult gi = adjoin_root(F, upoly(F, {1, 0, 1}));
        const FieldPtr& K = gi.field;
        NFElement b = NFElement::one(K) + gi.root; // fourth power is -4
        GroupPresentation P = free_presentation({b});
        REQUIRE(P.N == 4);
        REQUIRE(P.gammas.size() == 1);
        REQUIRE(P.E == imat({{1}}));
        check_presentation({b}, P);
    }
    SECTION("irrational power becomes its own generator") {
        AdjoinResult g2 = adjoin_root(F, upoly(F, {-2, 0, 1}));
        const FieldPtr& K = g2.field;
        NFElement u = NFElement::one(K) + g2.root;
        GroupPresentation P = free_presentation({u});
        REQUIRE(P.N == 2);
        REQUIRE(P.gammas == std::vector<NFElement>{u * u});
        REQUIRE(P.E == imat({{1}}));
        check_presentation({u}, P);
    }
    SECTION("mixed rational and irrational powers") {
        AdjoinResult g2 = adjoin_root(F, upoly(F, {-2, 0, 1}));
        const FieldPtr& K = g2.field;
        NFElement u = NFElement::one(K) + g2.root;
        GroupPresentation P = free_presentation({g2.root, u});
        REQUIRE(P.N == 2);
        REQUIRE(P.gammas.size() == 2);
        REQUIRE(P.E == imat({{1, 0}, {0, 1}}));
        check_presentation({g2.root, u}, P);
    }
    SECTION("dependent irrational powers collapse to one generator") {
        AdjoinResult g2 = adjoin_root(F, upoly(F, {-2, 0, 1}));
        const FieldPtr& K = g2.field;
        NFElement u = NFElement::one(K) + g2.root;
        GroupPresentation P = free_presentation({u, u * u * u});
        REQUIRE(P.N == 2);
        REQUIRE(P.gammas.size() == 1);
        check_presentation({u, u * u * u}, P);
    }
}

TEST_CASE("laurent encoding of a progression slice") {
    auto F = Q();
    GroupPresentation P = free_presentation({q(F, 6), q(F, 4)});
    REQUIRE(P.gammas == std::vector<NFElement>{q(F, 2), q(F, 3)});
    REQUIRE(P.E == imat({{2, 2}, {4, 0}}));

    SECTION("coefficient powers become powers of the first variable") {
        UniPoly n = upoly(F, {0, 1});
        ExpPoly e = make_exppoly(F, {{n, q(F, 36)}, {upoly(F, {1}), q(F, 16)}});
        Laurent f = encode_laurent(e, P);
        Laurent expect = lp::add(lp::monomial(F, 3, {1, 2, 2}, q(F, 1)),
                                 lp::monomial(F, 3, {0, 4, 0}, q(F, 1)));
        REQUIRE(f == expect);
        for (long k = 0; k <= 50; ++k) {
            std::vector<NFElement> pt = {q(F, k), q(F, 2).pow(k), q(F, 3).pow(k)};
            REQUIRE(lau_eval(f, pt) == exppoly_eval(e, k));
        }
    }
    SECTION("single monomial with a square coefficient") {
        ExpPoly e = make_exppoly(F, {{upoly(F, {0, 0, 1}), q(F, 16)}});
        Laurent f = encode_laurent(e, P);
        REQUIRE(f == lp::monomial(F, 3, {2, 4, 0}, q(F, 1)));
    }
    SECTION("negative group exponents evaluate correctly") {
        GroupPresentation P4 = free_presentation({q(F, 4, 9)});
        REQUIRE(P4.E == imat({{4, -4}}));
        ExpPoly e = make_exppoly(F, {{upoly(F, {1}), q(F, 16, 81)}});
        Laurent f = encode_laurent(e, P4);
        REQUIRE(f == lp::monomial(F, 3, {0, 4, -4}, q(F, 1)));
        for (long k = 0; k <= 6; ++k) {
            std::vector<NFElement> pt = {q(F, k), q(F, 2).pow(k), q(F, 3).pow(k)};
            REQUIRE(lau_eval(f, pt) == exppoly_eval(e, k));
        }
    }
    SECTION("zero input encodes to zero") {
        ExpPoly e = make_exppoly(F, {});
        REQUIRE(lp::is_zero(encode_laurent(e, P)));
    }
    SECTION("foreign base is rejected") {
        ExpPoly e = make_exppoly(F, {{upoly(F, {1}), q(F, 5)}});
        try {
            encode_laurent(e, P);
            FAIL("expected a base mismatch");
        } catch (const Error& err) {
            REQUIRE(err.code() == errc::base_mismatch);
        }
    }
    SECTION("corrections are rejected") {
        ExpPoly e = make_exppoly(F, {{upoly(F, {1}), q(F, 16)}}, {{0, q(F, 7)}});
        try {
            encode_laurent(e, P);
            FAIL("expected an invalid argument");
        } catch (const Error& err) {
            REQUIRE(err.code() == errc::invalid_argument);
        }
    }
}
