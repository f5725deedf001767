#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetalift/poly.hpp"

using namespace zetalift;

namespace {

// parse-free builders for the tests
MultiPoly term(const CtxPtr& ctx, int nvars, std::vector<int> e, long c) {
    return MultiPoly::monomial(nvars, e, ctx->from_int(c));
}

MultiPoly random_poly(const CtxPtr& ctx, std::mt19937_64& rng, int nvars, int max_deg,
                      int nterms) {
    MultiPoly r(nvars);
    for (int k = 0; k < nterms; ++k) {
        MultiPoly::Exps e(size_t(nvars), 0);
        for (auto& x : e) x = int(rng() % (max_deg + 1));
        r.add_term(e, ctx->from_int(long(rng() % 21) - 10));
    }
    return r;
}

}  // namespace

TEST_CASE("series evaluation respects defining relations") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    // f = x^2 - y^2 - 1 vanishes at (t^-1, t^-1 sqrt(1-t^2))
    MultiPoly f = term(ctx, 2, {2, 0}, 1);
    f = mp_add(f, term(ctx, 2, {0, 2}, -1));
    f = mp_add(f, term(ctx, 2, {0, 0}, -1));

    long depth = 24;
    LaurentSeries x = LaurentSeries::monomial(ctx->one(), -1, depth);
    std::vector<ZqElement> u(size_t(depth), ctx->zero(3));
    u[0] = ctx->one();
    u[2] = ctx->from_int(-1);
    auto y = ls_shift(ls_sqrt(LaurentSeries::from_coeffs(ctx, 0, u, 3)), -1);
    auto v = mp_eval_series(f, {x, y});
    CHECK(v.is_zero());

    // constants and projections
    auto c = mp_eval_series(MultiPoly::constant(2, ctx->from_int(7)), {x, y});
    CHECK(c.coeff(0) == ctx->from_int(7));
    auto px = mp_eval_series(MultiPoly::variable(2, 0, ctx), {x, y});
    for (long m = px.lo(); m < std::min(px.hi(), x.hi()); ++m)
        CHECK(px.coeff(m) == x.coeff(m));
}

TEST_CASE("evaluation is a ring homomorphism on fixtures") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        auto f = random_poly(ctx, rng, 2, 3, 4);
        auto g = random_poly(ctx, rng, 2, 3, 4);
        std::vector<LaurentSeries> args;
        for (int i = 0; i < 2; ++i) {
            std::vector<ZqElement> c;
            for (int k = 0; k < 30; ++k) c.push_back(ctx->from_int(long(rng() % 11) - 5));
            args.push_back(LaurentSeries::from_coeffs(ctx, -2, c, 3));
        }
        auto lhs = mp_eval_series(mp_mul(f, g), args);
        auto rhs = ls_mul(mp_eval_series(f, args), mp_eval_series(g, args));
        for (long m = rhs.lo(); m < std::min(lhs.hi(), rhs.hi()); ++m)
            CHECK(lhs.coeff(m) == rhs.coeff(m));
    }
}

TEST_CASE("jacobian of the localized hyperelliptic presentation") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    // f2 = y^2 - Q(x) with Q = x^3 + 1, f3 = 2yz - 1, variables (x, y, z)
    MultiPoly f2 = term(ctx, 3, {0, 2, 0}, 1);
    f2 = mp_add(f2, term(ctx, 3, {3, 0, 0}, -1));
    f2 = mp_add(f2, term(ctx, 3, {0, 0, 0}, -1));
    MultiPoly f3 = term(ctx, 3, {0, 1, 1}, 2);
    f3 = mp_add(f3, term(ctx, 3, {0, 0, 0}, -1));

    auto J = mp_jacobian({f2, f3});
    CHECK(J[0][0] == term(ctx, 3, {2, 0, 0}, -3));  // -Q'(x)
    CHECK(J[0][1] == term(ctx, 3, {0, 1, 0}, 2));   // 2y
    CHECK(J[0][2].is_zero());
    CHECK(J[1][0].is_zero());
    CHECK(J[1][1] == term(ctx, 3, {0, 0, 1}, 2));   // 2z
    CHECK(J[1][2] == term(ctx, 3, {0, 1, 0}, 2));   // 2y

    CHECK(mp_jacobian({MultiPoly::constant(1, ctx->from_int(9))})[0][0].is_zero());
    CHECK(mp_jacobian({term(ctx, 1, {2}, 1)})[0][0] == term(ctx, 1, {1}, 2));
}

TEST_CASE("jacobian satisfies the product rule") {
    auto ctx = PrecisionContext::make(7, 1, 3);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_poly(ctx, rng, 3, 2, 4);
        auto g = random_poly(ctx, rng, 3, 2, 4);
        for (int i = 0; i < 3; ++i) {
            auto lhs = mp_derivative(mp_mul(f, g), i);
            auto rhs = mp_add(mp_mul(mp_derivative(f, i), g), mp_mul(f, mp_derivative(g, i)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("psi substitution") {
    auto ctx = PrecisionContext::make(5, 1, 3);
    auto f = term(ctx, 1, {1}, 2);
    auto pf = mp_psi(f);
    CHECK(pf == term(ctx, 1, {5}, 2));
    CHECK(mp_psi(MultiPoly::constant(1, ctx->one())) == MultiPoly::constant(1, ctx->one()));

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto f2 = random_poly(ctx, rng, 2, 2, 3);
        auto g2 = random_poly(ctx, rng, 2, 2, 3);
        CHECK(mp_psi(mp_mul(f2, g2)) == mp_mul(mp_psi(f2), mp_psi(g2)));
    }

    // sigma twists coefficients over an extension
    auto ctx2 = PrecisionContext::make(5, 2, 3);
    auto g = MultiPoly::constant(1, ctx2->generator());
    CHECK(mp_psi(g) == MultiPoly::constant(1, zq_sigma(ctx2->generator())));
}

TEST_CASE("polytope cost") {
    PolytopeBounds running{{{mpq_class(1, 2), mpq_class(1, 2)}}};
    CHECK(running.cost({3, 4}) == mpq_class(7, 2));
    PolytopeBounds elliptic{{{mpq_class(2, 6), mpq_class(3, 6)}}};
    CHECK(elliptic.cost({1, 1}) == mpq_class(5, 6));
    CHECK(elliptic.cost({0, 0}) == 0);

    // positive homogeneity
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> I = {int(rng() % 9), int(rng() % 9)};
        int k = int(rng() % 5);
        std::vector<int> kI = {k * I[0], k * I[1]};
        CHECK(elliptic.cost(kI) == k * elliptic.cost(I));
    }

    auto ctx = PrecisionContext::make(5, 1, 3);
    auto f = mp_add(term(ctx, 2, {0, 2}, 1), term(ctx, 2, {3, 0}, -1));
    CHECK_NOTHROW(elliptic.validate({f}));
    PolytopeBounds bad{{{mpq_class(1, 2), mpq_class(1, 2)}}};
    CHECK_THROWS_AS(bad.validate({f}), Error);  // (3,0) costs 3/2 > 1
}
