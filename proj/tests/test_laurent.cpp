#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetalift/laurent.hpp"

using namespace zetalift;

namespace {

LaurentSeries make(const CtxPtr& ctx, long lo, std::vector<long> coeffs, int prec = -1) {
    if (prec < 0) prec = ctx->n_work();
    std::vector<ZqElement> c;
    for (long v : coeffs) c.push_back(ctx->from_int(v, prec));
    return LaurentSeries::from_coeffs(ctx, lo, c, prec);
}

LaurentSeries random_series(const CtxPtr& ctx, std::mt19937_64& rng, long lo, long len) {
    std::vector<long> c;
    c.resize(size_t(len));
    for (auto& x : c) x = long(rng() % 19) - 9;
    return make(ctx, lo, c);
}

}  // namespace

TEST_CASE("multiplication window rule and values") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    auto a = make(ctx, -1, {1, 1, 0, 0});      // t^-1 + 1 on [-1,3)
    auto b = make(ctx, 0, {-1, 1, 0});         // t - 1 on [0,3)
    auto c = ls_mul(a, b);
    CHECK(c.lo() == -1);
    CHECK(c.hi() == 2);                        // min(-1+3, 0+3)
    CHECK(c.coeff(-1) == ctx->from_int(-1));
    CHECK(c.coeff(0).is_zero());
    CHECK(c.coeff(1) == ctx->one());

    auto one = make(ctx, 0, {1, 0, 0, 0, 0});
    auto s = make(ctx, -2, {3, 1, 4, 1});
    auto t = ls_mul(s, one);
    CHECK(t.lo() == -2);
    CHECK(t.hi() == std::min(-2 + 5, 0 + 2));
    for (long m = t.lo(); m < t.hi(); ++m) CHECK(t.coeff(m) == s.coeff(m));
}

TEST_CASE("product respects a coefficient-valuation profile") {
    auto ctx = PrecisionContext::make(5, 1, 4);
    std::mt19937_64 rng(7);
    BoundProfile pb{mpq_class(1, 8), 0};
    for (int trial = 0; trial < 25; ++trial) {
        // random series with v(a_m) >= ceil(-m/8)
        auto gen = [&](long lo, long len) {
            std::vector<ZqElement> c;
            for (long m = lo; m < lo + len; ++m) {
                long need = std::max<long>(0, ceil_q_long(mpq_class(-m, 8)));
                mpz_class v = long(rng() % 25);
                for (long k = 0; k < need; ++k) v *= 5;
                c.push_back(ctx->from_int(v));
            }
            return LaurentSeries::from_coeffs(ctx, lo, c, ctx->n_work());
        };
        auto a = gen(-16, 24), b = gen(-16, 24);
        REQUIRE(ls_profile_check(a, pb));
        REQUIRE(ls_profile_check(b, pb));
        CHECK(ls_profile_check(ls_mul(a, b), pb));
    }
}

TEST_CASE("inversion") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    auto geo = ls_inv(make(ctx, 0, {1, -1, 0, 0, 0, 0}));  // 1/(1-t)
    for (long m = 0; m < geo.hi(); ++m) CHECK(geo.coeff(m) == ctx->one());

    auto mono = ls_inv(make(ctx, 2, {1, 0, 0}));
    CHECK(mono.lo() == -2);
    CHECK(mono.coeff(-2) == ctx->one());

    auto c = ls_inv(make(ctx, -1, {2, 0, 0, 0}));
    CHECK(c.coeff(1) == ctx->from_int(63));  // 2^{-1} mod 125

    // p-divisible tail below the unit coefficient
    auto a = make(ctx, -3, {5, 0, 0, 1, -1, 0, 2, 0, 0, 0, 0, 0});
    auto inv = ls_inv(a);
    auto prod = ls_mul(a, inv);
    for (long m = prod.lo(); m < prod.hi(); ++m)
        CHECK(prod.coeff(m) == (m == 0 ? ctx->one() : ctx->zero(3)));

    CHECK_THROWS_AS(ls_inv(make(ctx, 0, {5, 10, 0})), Error);
}

TEST_CASE("integration and residue") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    auto w = make(ctx, -3, {1, 0, 0, 0, 0});   // t^-3 dt
    auto iw = ls_integrate(w);
    CHECK(iw.coeff(-2) == ctx->from_rational(mpq_class(-1, 2)));

    auto lin = ls_integrate(make(ctx, 0, {0, 1, 0}));  // t dt
    CHECK(lin.coeff(2) == ctx->from_rational(mpq_class(1, 2)));

    CHECK_THROWS_AS(ls_integrate(make(ctx, -1, {1, 0, 0})), Error);

    auto f = make(ctx, -2, {3, 5, 7, 0});
    CHECK(ls_residue(f) == ctx->from_int(5));
    CHECK(ls_residue(make(ctx, -1, {1, 0})) == ctx->one());
    // residues of derivatives vanish
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i)
        CHECK(ls_residue(ls_derivative(random_series(ctx, rng, -4, 9))).is_zero());
}

TEST_CASE("derivative inverts integration") {
    auto ctx = PrecisionContext::make(7, 1, 4);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto w = random_series(ctx, rng, -5, 11);
        w.set_coeff(-1, ctx->zero(4));
        auto back = ls_derivative(ls_integrate(w));
        for (long m = std::max(w.lo(), back.lo()); m < std::min(w.hi(), back.hi()); ++m)
            CHECK(back.coeff(m) == w.coeff(m).truncated(back.prec()));
    }
}

TEST_CASE("integration by parts: Res(f dg) + Res(g df) = 0") {
    auto ctx = PrecisionContext::make(5, 1, 4);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        auto f = random_series(ctx, rng, -4, 20);
        auto g = random_series(ctx, rng, -5, 20);
        auto s = zq_add(ls_residue(ls_mul(f, ls_derivative(g))),
                        ls_residue(ls_mul(g, ls_derivative(f))));
        CHECK(s.is_zero());
    }
}

TEST_CASE("residue pairing") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    ResiduePairRange range{-6, 6, 2};

    auto w = make(ctx, -3, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0});  // t^-3 dt
    auto e = make(ctx, -2, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0});  // t dt
    CHECK(ls_res_pair(w, e, range) == ctx->from_rational(mpq_class(1, 2)).truncated(2));

    // exponents that cannot sum to -2 pair to zero
    auto w2 = make(ctx, 3, {1, 0, 0, 0, 0, 0, 0, 0});
    auto e2 = make(ctx, 2, {1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(ls_res_pair(w2, e2, range).is_zero());
}

TEST_CASE("pairing formula equals the direct residue computation") {
    auto ctx = PrecisionContext::make(5, 1, 5);
    std::mt19937_64 rng(23);
    ResiduePairRange range{-9, 9, 2};
    for (int i = 0; i < 50; ++i) {
        auto e = random_series(ctx, rng, -3, 9);   // window [-3, 6)
        e.set_coeff(-1, ctx->zero(5));
        auto w = random_series(ctx, rng, -6, 10);  // window [-6, 4)
        auto [lhs, v1] = ls_res_pair_scaled(w, e, range);
        auto [ie, v2] = ls_integrate_scaled(e);
        auto rhs = ls_residue(ls_mul(w, ie));
        // lhs / p^v1 == rhs / p^v2
        auto scale = [&](const ZqElement& z, long k) {
            std::vector<mpz_class> c(z.coeffs());
            for (auto& x : c)
                for (long j = 0; j < k; ++j) x *= 5;
            return ctx->from_coeffs(c, z.prec());
        };
        CHECK(scale(lhs, v2) == scale(rhs, v1));
    }
}

TEST_CASE("square root") {
    auto ctx = PrecisionContext::make(5, 1, 4);
    auto a = make(ctx, 0, {1, 0, -1, 0, 0, 0, 0, 0});  // 1 - t^2
    auto s = ls_sqrt(a);
    CHECK(s.coeff(0) == ctx->one());
    CHECK(s.coeff(2) == ctx->from_rational(mpq_class(-1, 2)));
    CHECK(s.coeff(4) == ctx->from_rational(mpq_class(-1, 8)));
    CHECK(s.coeff(6) == ctx->from_rational(mpq_class(-1, 16)));
    auto sq = ls_mul(s, s);
    for (long m = sq.lo(); m < sq.hi(); ++m) CHECK(sq.coeff(m) == a.coeff(m));

    auto one = make(ctx, 0, {1, 0, 0});
    CHECK(ls_sqrt(one).coeff(0) == ctx->one());
    CHECK_THROWS_AS(ls_sqrt(make(ctx, 0, {2, 1, 0})), Error);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
        auto r = random_series(ctx, rng, 1, 9);
        auto u = ls_add(make(ctx, 0, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}), r);
        auto rt = ls_sqrt(u);
        auto back = ls_mul(rt, rt);
        for (long m = back.lo(); m < back.hi(); ++m) CHECK(back.coeff(m) == u.coeff(m));
    }
}

TEST_CASE("profile checks") {
    auto ctx = PrecisionContext::make(5, 1, 4);
    BoundProfile pb{mpq_class(1, 8), 0};
    CHECK(ls_profile_check(make(ctx, -8, {5, 0, 0, 0, 0, 0, 0, 0, 1}), pb));
    CHECK_FALSE(ls_profile_check(make(ctx, -8, {1, 0, 0, 0, 0, 0, 0, 0, 1}), pb));
    BoundProfile vac{mpq_class(1, 8), -1000};
    CHECK(ls_profile_check(make(ctx, -8, {1, 2, 3}), vac));
}

TEST_CASE("window honesty: restriction commutes with multiplication") {
    auto ctx = PrecisionContext::make(7, 1, 3);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 30; ++i) {
        auto a = random_series(ctx, rng, -6, 16);
        auto b = random_series(ctx, rng, -4, 14);
        auto full = ls_mul(a, b);
        auto ar = a.truncated_hi(a.hi() - 3);
        auto br = b.truncated_hi(b.hi() - 2);
        auto part = ls_mul(ar, br);
        // every claimed coefficient matches the wider computation
        for (long m = part.lo(); m < part.hi(); ++m) CHECK(part.coeff(m) == full.coeff(m));
    }
}

TEST_CASE("capped product agrees with the plain one and extends soundly") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    std::mt19937_64 rng(37);
    for (int i = 0; i < 20; ++i) {
        // full polynomials: the capped claim is exact everywhere
        auto a = random_series(ctx, rng, -3, 8);
        auto b = random_series(ctx, rng, -2, 8);
        auto plain = ls_mul(a, b);
        auto capped = ls_mul_capped(a, b, -20, 12);
        for (long m = plain.lo(); m < plain.hi(); ++m) CHECK(capped.coeff(m) == plain.coeff(m));
        // beyond the plain window the capped product is the true polynomial product
        auto wide_a = LaurentSeries::from_coeffs(
            ctx, a.lo(), [&] { std::vector<ZqElement> c; for (long m = a.lo(); m < a.hi(); ++m) c.push_back(a.coeff(m)); for (int k = 0; k < 10; ++k) c.push_back(ctx->zero(3)); return c; }(), 3);
        auto wide_b = LaurentSeries::from_coeffs(
            ctx, b.lo(), [&] { std::vector<ZqElement> c; for (long m = b.lo(); m < b.hi(); ++m) c.push_back(b.coeff(m)); for (int k = 0; k < 10; ++k) c.push_back(ctx->zero(3)); return c; }(), 3);
        auto truth = ls_mul(wide_a, wide_b);
        for (long m = plain.hi(); m < capped.hi() && m < truth.hi(); ++m)
            CHECK(capped.coeff(m) == truth.coeff(m));
    }
}
