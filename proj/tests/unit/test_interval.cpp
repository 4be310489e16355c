#include <catch2/catch_amalgamated.hpp>

#include "hroot/fields.hpp"
#include "hroot/interval.hpp"

using namespace hroot;

namespace {

RatPoly rp(std::initializer_list<long> cs) {
    RatPoly p;
    for (long c : cs) p.push_back(BigRat(c));
    zp::normalize(p);
    return p;
}

BigRat dec(const std::string& digits) { return rat_from_string(digits); }

bool contains(const RIv& x, const BigRat& v) { return x.lo <= v && v <= x.hi; }

// x must meet the open bracket (lo, hi) that pins the true value
bool overlaps(const RIv& x, const BigRat& lo, const BigRat& hi) {
    return x.lo < hi && x.hi > lo;
}

const std::string D33 = "1000000000000000000000000000000000"; // 10^33

// value known to lie in (digits/10^33, (digits+1)/10^33)
struct Pinned {
    BigRat lo, hi;
    explicit Pinned(const std::string& num)
        : lo(rat_from_string(num + "/" + D33)),
          hi(rat_from_string(num + "/" + D33) +
             (num[0] == '-' ? -rat_from_string("1/" + D33) : rat_from_string("1/" + D33))) {
        if (lo > hi) std::swap(lo, hi);
    }
};

const Pinned PI("3141592653589793238462643383279502");
const Pinned LN2("693147180559945309417232121458176");
const Pinned LN10("2302585092994045684017991454684364");
const Pinned LN5("1609437912434100374600759333226187");
const Pinned ATAN_2_5("380506377112364886303587916810433");
const Pinned ATAN_N11_10("-832981266674431705417693561836362");
const Pinned ARG_RE01_IM1("1471127674303734591852875571761730");
const Pinned ARG_NRE01_NIM1("-1670464979286058646609767811517773");
const Pinned SQRT2_P1("2414213562373095048801688724209698");
const Pinned CBRT2("1259921049894873164767210607278228");
const Pinned CX_IM_CBRT("1091123635971721403560072614189809");

} // namespace

TEST_CASE("dyadic rounding brackets the value") {
    BigRat q = rat(1, 3);
    for (long prec : {4L, 16L, 53L}) {
        BigRat d = iv::round_down(q, prec), u = iv::round_up(q, prec);
        REQUIRE(d <= q);
        REQUIRE(q <= u);
        REQUIRE(u - d <= rat(1, BigInt(1) << (prec - 1)));
    }
    REQUIRE(iv::round_down(rat(3, 4), 2) == rat(3, 4));
    REQUIRE(iv::round_up(rat(3, 4), 2) == rat(3, 4));
}

TEST_CASE("interval arithmetic preserves containment") {
    RIv a(rat(1, 3), rat(1, 2)), b(rat(-2, 1), rat(-1, 5));
    RIv s = a + b, p = a * b;
    REQUIRE(contains(s, rat(1, 3) + rat(-1, 5)));
    REQUIRE(contains(p, rat(1, 2) * rat(-2, 1)));
    REQUIRE(p.lo == rat(1, 2) * rat(-2, 1));
    REQUIRE(p.hi == rat(1, 3) * rat(-1, 5));
    REQUIRE(contains(b.inv(), rat(-1, 1)));
    REQUIRE_THROWS_AS(RIv(rat(-1, 1), rat(1, 1)).inv(), Error);
}

TEST_CASE("pi enclosure matches known digits") {
    RIv pi = iv::pi_interval(80);
    REQUIRE(overlaps(pi, PI.lo, PI.hi));
    REQUIRE(pi.width() <= rat(1, BigInt(1) << 70));
}

TEST_CASE("logarithm enclosures") {
    RIv l2 = iv::ln_point(BigRat(2), 80);
    REQUIRE(overlaps(l2, LN2.lo, LN2.hi));
    REQUIRE(l2.width() <= rat(1, BigInt(1) << 70));

    RIv l1 = iv::ln_point(BigRat(1), 60);
    REQUIRE(contains(l1, BigRat(0)));
    REQUIRE(l1.width() <= rat(1, BigInt(1) << 55));

    RIv lh = iv::ln_point(rat(1, 2), 60);
    REQUIRE(overlaps(lh, -LN2.hi, -LN2.lo));
    REQUIRE(lh.hi < 0);

    // ln(10) exercises the range reduction with k = 3
    RIv l10 = iv::ln_point(BigRat(10), 60);
    REQUIRE(overlaps(l10, LN10.lo, LN10.hi));

    RIv wide = iv::ln_iv(RIv(BigRat(2), BigRat(8)), 60);
    REQUIRE(wide.lo <= LN2.hi);
    REQUIRE(wide.hi >= LN2.lo * 3); // ln 8 = 3 ln 2
    REQUIRE(wide.lo >= LN2.lo - rat(1, 1 << 20));
}

TEST_CASE("arctangent enclosures") {
    // direct series range
    RIv a = iv::atan_point(rat(2, 5), 70);
    REQUIRE(overlaps(a, ATAN_2_5.lo, ATAN_2_5.hi));
    REQUIRE(a.width() <= rat(1, BigInt(1) << 60));
    // folded range, exercises atan t = pi/4 + atan((t-1)/(t+1))
    RIv b = iv::atan_point(BigRat(1), 70);
    REQUIRE(overlaps(b, PI.lo / 4, PI.hi / 4));
    REQUIRE(b.width() <= rat(1, BigInt(1) << 60));
    RIv c = iv::atan_point(rat(-11, 10), 60);
    REQUIRE(overlaps(c, ATAN_N11_10.lo, ATAN_N11_10.hi));
    REQUIRE_THROWS_AS(iv::atan_point(BigRat(2), 40), Error);
}

TEST_CASE("argument representative per quadrant") {
    long prec = 50;
    auto boxat = [](double x, double y) {
        BigRat bx(x), by(y);
        BigRat w = rat(1, 1 << 20);
        return CBox(RIv(bx - w, bx + w), RIv(by - w, by + w));
    };

    auto q1 = iv::arg_box(boxat(1.0, 1.0), prec);
    REQUIRE(q1.has_value());
    REQUIRE(overlaps(*q1, PI.lo / 4, PI.hi / 4));

    auto q2 = iv::arg_box(boxat(-1.0, 1.0), prec);
    REQUIRE(q2.has_value());
    REQUIRE(overlaps(*q2, PI.lo * rat(3, 4), PI.hi * rat(3, 4)));

    auto q3 = iv::arg_box(boxat(-1.0, -1.0), prec);
    REQUIRE(q3.has_value());
    REQUIRE(overlaps(*q3, PI.lo * rat(5, 4), PI.hi * rat(5, 4)));

    auto q4 = iv::arg_box(boxat(1.0, -1.0), prec);
    REQUIRE(q4.has_value());
    REQUIRE(overlaps(*q4, -PI.hi / 4, -PI.lo / 4));

    // im-dominant cases
    auto top = iv::arg_box(boxat(0.1, 1.0), prec);
    REQUIRE(top.has_value());
    REQUIRE(overlaps(*top, ARG_RE01_IM1.lo, ARG_RE01_IM1.hi));
    auto bot = iv::arg_box(boxat(-0.1, -1.0), prec);
    REQUIRE(bot.has_value());
    REQUIRE(overlaps(*bot, ARG_NRE01_NIM1.lo, ARG_NRE01_NIM1.hi));

    // a box straddling both axes has no certified argument
    auto wide = iv::arg_box(CBox(RIv(BigRat(-1), BigRat(1)), RIv(BigRat(-1), BigRat(1))), prec);
    REQUIRE(!wide.has_value());
}

TEST_CASE("log of box magnitude") {
    BigRat w = rat(1, 1 << 16);
    CBox b(RIv(BigRat(3) - w, BigRat(3) + w), RIv(BigRat(4) - w, BigRat(4) + w));
    auto l = iv::log_abs_box(b, 50);
    REQUIRE(l.has_value());
    REQUIRE(overlaps(*l, LN5.lo, LN5.hi));
    CBox z(RIv(-w, w), RIv(-w, w));
    REQUIRE(!iv::log_abs_box(z, 50).has_value());
}

TEST_CASE("real root isolation") {
    // x^2 - 2
    RatPoly f2 = rp({-2, 0, 1});
    auto r1 = iv::isolate_real_roots(f2);
    REQUIRE(r1.size() == 2);
    auto neg = iv::refine_real_root(f2, r1[0], 16);
    auto pos = iv::refine_real_root(f2, r1[1], 16);
    REQUIRE(neg.hi < 0);
    REQUIRE(pos.lo > 0);
    auto sq = iv::refine_real_root(f2, r1[1], 64);
    REQUIRE(sq.lo * sq.lo <= 2);
    REQUIRE(sq.hi * sq.hi >= 2);
    REQUIRE(sq.width() <= rat(1, BigInt(1) << 64));

    // no real roots
    REQUIRE(iv::isolate_real_roots(rp({1, 0, 1})).empty());

    // (x-1)(x-2)(x-3)
    RatPoly w = zp::mul(zp::mul(rp({-1, 1}), rp({-2, 1})), rp({-3, 1}));
    auto r3 = iv::isolate_real_roots(w);
    REQUIRE(r3.size() == 3);
    for (int i = 0; i < 3; ++i) {
        auto b = iv::refine_real_root(w, r3[i], 40);
        REQUIRE(contains(b, BigRat(i + 1)));
    }
}

TEST_CASE("isolation with an exact root at a bisection point") {
    // x(x^2-1)(x^2-1/16): the first midpoint of (-B, B) is the root 0,
    // and the naive excluded gap around it would swallow +-1/4
    RatPoly f = zp::mul(zp::mul(rp({0, 1}), rp({-1, 0, 1})),
                        RatPoly{rat(-1, 16), BigRat(0), BigRat(1)});
    auto roots = iv::isolate_real_roots(f);
    REQUIRE(roots.size() == 5);
    BigRat expect[5] = {BigRat(-1), rat(-1, 4), BigRat(0), rat(1, 4), BigRat(1)};
    for (int i = 0; i < 5; ++i) {
        auto b = iv::refine_real_root(f, roots[i], 30);
        REQUIRE(contains(b, expect[i]));
    }
}

TEST_CASE("upper dyadic square root") {
    BigRat u = iv::sqrt_upper(BigRat(2), 40);
    REQUIRE(u * u >= 2);
    REQUIRE((u - rat(1, BigInt(1) << 40)) * (u - rat(1, BigInt(1) << 40)) < 2);
    REQUIRE(iv::sqrt_upper(BigRat(0), 10) == 0);
    REQUIRE(iv::sqrt_upper(rat(1, 4), 10) == rat(1, 2));
}

TEST_CASE("embeddings of quadratic and cyclotomic fields") {
    auto K = NumberField::make(rp({-2, 0, 1})); // x^2 - 2
    auto E = EmbeddingAccess::get(K, 40);
    REQUIRE(E->r == 2);
    REQUIRE(E->s == 0);
    REQUIRE(E->places.size() == 2);
    REQUIRE(E->places[0].re.hi < 0);
    REQUIRE(E->places[1].re.lo > 0);

    // 1 + sqrt(2) is positive at one real place, negative at the other
    auto a = NFElement::of(K, 1L) + NFElement::gen(K);
    CBox v0 = eval_box(a, E->places[0], 40);
    CBox v1 = eval_box(a, E->places[1], 40);
    REQUIRE(v0.re.negative());
    REQUIRE(v1.re.positive());
    REQUIRE(contains(v0.im, BigRat(0)));
    REQUIRE(overlaps(v1.re, SQRT2_P1.lo, SQRT2_P1.hi));

    auto I = NumberField::make(rp({1, 0, 1})); // x^2 + 1
    auto EI = EmbeddingAccess::get(I, 40);
    REQUIRE(EI->r == 0);
    REQUIRE(EI->s == 1);
    REQUIRE(EI->places.size() == 1);
    REQUIRE(contains(EI->places[0].re, BigRat(0)));
    REQUIRE(contains(EI->places[0].im, BigRat(1)));
    REQUIRE(EI->places[0].im.lo > 0);
}

TEST_CASE("embeddings of a mixed-signature cubic") {
    auto K = NumberField::make(rp({-2, 0, 0, 1})); // x^3 - 2
    auto E = EmbeddingAccess::get(K, 48);
    REQUIRE(E->r == 1);
    REQUIRE(E->s == 1);
    REQUIRE(E->r + 2 * E->s == K->degree());
    const auto& real = E->places[0];
    REQUIRE(real.is_real);
    REQUIRE(overlaps(real.re, CBRT2.lo, CBRT2.hi));
    const auto& cx = E->places[1];
    REQUIRE(!cx.is_real);
    REQUIRE(cx.im.lo > 0);
    // the complex roots are cbrt(2) * (-1/2 +- i sqrt(3)/2)
    REQUIRE(overlaps(cx.re, -CBRT2.hi / 2, -CBRT2.lo / 2));
    REQUIRE(overlaps(cx.im, CX_IM_CBRT.lo, CX_IM_CBRT.hi));

    // theta^3 evaluates to 2 at every place
    auto t3 = NFElement::gen(K).pow(3);
    for (const auto& P : E->places) {
        CBox v = eval_box(t3, P, 40);
        REQUIRE(contains(v.re, BigRat(2)));
        REQUIRE(contains(v.im, BigRat(0)));
        REQUIRE(v.re.width() <= rat(1, 1 << 16));
    }
}

TEST_CASE("embedding refinement shrinks in place") {
    auto K = NumberField::make(rp({1, 1, 1, 1, 1})); // 5th cyclotomic
    auto E1 = EmbeddingAccess::get(K, 24);
    REQUIRE(E1->r == 0);
    REQUIRE(E1->s == 2);
    auto E2 = EmbeddingAccess::get(K, 96);
    REQUIRE(E2->places.size() == 2);
    for (int i = 0; i < 2; ++i) {
        const auto& a = E1->places[i];
        const auto& b = E2->places[i];
        REQUIRE(b.re.width() < a.re.width());
        // same root: boxes intersect
        REQUIRE(b.re.lo <= a.re.hi);
        REQUIRE(a.re.lo <= b.re.hi);
        REQUIRE(b.im.lo <= a.im.hi);
        REQUIRE(a.im.lo <= b.im.hi);
        REQUIRE(b.im.width() <= rat(1, BigInt(1) << 90));
    }
    // cached snapshot is reused
    auto E3 = EmbeddingAccess::get(K, 50);
    REQUIRE(E3 == E2);
    // roots of unity have unit magnitude
    for (const auto& P : E2->places) {
        auto l = iv::log_abs_box(CBox(P.re, P.im), 60);
        REQUIRE(l.has_value());
        REQUIRE(contains(*l, BigRat(0)));
        REQUIRE(l->width() <= rat(1, BigInt(1) << 50));
    }
}

TEST_CASE("lll finds a short vector and preserves the lattice") {
    IMat B{{BigInt(1), BigInt(1), BigInt(1)},
           {BigInt(-1), BigInt(0), BigInt(2)},
           {BigInt(3), BigInt(5), BigInt(6)}};
    IMat orig = B;
    la::lll_reduce(B);
    auto [h1, u1] = la::row_hnf(orig);
    auto [h2, u2] = la::row_hnf(B);
    REQUIRE(h1 == h2);
    BigInt n0 = la::dot(B[0], B[0]);
    REQUIRE(n0 == 1);
    auto g = la::gso_norms(B);
    for (size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] > 0);
}
