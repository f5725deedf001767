#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zetalift/errors.hpp"
#include "zetalift/planner.hpp"

using namespace zetalift;

TEST_CASE("weil precision") {
    auto zp = weil_precision(1, 5, 1, 0);
    CHECK(zp.n == 2);  // 5^2 = 25 < 80 <= 5^4
    CHECK(zp.q == 5);
    // |a_1| <= 2 sqrt(5): admissible integers are exactly [-4, 4]
    mpz_class b2 = weil_bound_sq(1, 1, mpz_class(5));
    CHECK(b2 == 20);
    for (long a = -4; a <= 4; ++a) CHECK(mpz_class(a * a) <= b2);
    CHECK(mpz_class(25) > b2);
    CHECK_THROWS_AS(weil_precision(0, 5, 1), Error);

    auto zpm = weil_precision(1, 5, 1, 1);
    CHECK(zpm.n == 3);
    CHECK(weil_precision(2, 5, 1, 0).n >= 2);
}

TEST_CASE("misc exact helpers") {
    CHECK(ceil_log_p(5, mpz_class(1)) == 0);
    CHECK(ceil_log_p(5, mpz_class(5)) == 1);
    CHECK(ceil_log_p(5, mpz_class(26)) == 3);
    CHECK(vp_factorial(5, 4) == 0);
    CHECK(vp_factorial(5, 25) == 6);
    CHECK(vp_factorial(2, 10) == 8);
}

TEST_CASE("local lift bound: one end of an odd hyperelliptic curve") {
    // Only infinity removed, localized model: H_0 has pole 2p(2g+1), the
    // S-linear coefficient is a unit, H_2 has no pole.
    long g = 1, p = 5;
    auto est = local_lift_bound(1, 1, {2 * p * (2 * g + 1), 0, -2 * p * int(2 * g + 1)});
    CHECK(est.alpha_nu == mpq_class(1, 2 * p * (2 * g + 1)));  // 1/30
    CHECK(est.beta == 0);
}

TEST_CASE("local lift bound: full hyperelliptic model crude closed form") {
    // d_0 = 2p(2g+1), d_1 = 8pg with b = 1, d_l = 2p((l-1)(2g-1)+4g)
    for (long g : {1L, 2L}) {
        long p = 5;
        std::vector<long> d;
        d.push_back(2 * p * (2 * g + 1));
        d.push_back(8 * p * g);
        for (long l = 2; l <= 2 * g + 1; ++l) d.push_back(2 * p * ((l - 1) * (2 * g - 1) + 4 * g));
        auto est = local_lift_bound(1, 1, d);
        CHECK(est.alpha_tilde == mpq_class(1, 16 * p * g));
        CHECK(est.nu_tilde == mpq_class(6 * g - 1, 8 * g));
    }
}

TEST_CASE("refined lift bound reaches 1/(2p-2) on the plane quadric") {
    // H = 4^{-1} A S^2 + A S + (A - 1) with A - 1 supported on
    // t^{-2p+2}..t^{-2}, all coefficients of valuation 1.
    long p = 5;
    std::vector<ScanConstraint> cons;
    for (long k = 1; k <= p - 1; ++k) {
        cons.push_back({0, -2 * k, 1});
        cons.push_back({1, -2 * k, 1});
        cons.push_back({2, -2 * k, 1});
    }
    auto est = refine_lift_bound(1, cons, {2 * int(p) - 2, 2 * int(p) - 2, 2 * int(p) - 2});
    CHECK(est.alpha_nu == mpq_class(1, 2 * p - 2));  // 1/8
    CHECK(est.beta == 0);
}

TEST_CASE("global lift degree cutoff") {
    CHECK(global_lift_bound(mpq_class(1, 2), 5, 2) == mpq_class(45, 2));
    CHECK(global_lift_bound(mpq_class(1, 2), 5, 0) == 0);
    // elliptic: the discard bound reads v >= (2i+3j)/(18p) + 1/2; the cutoff
    // for N solves c/(3p) + 1/2 >= N with d = 1/2
    CHECK(global_lift_bound(mpq_class(1, 2), 5, 3) == mpq_class(75, 2));
}

TEST_CASE("expansion estimates") {
    long p = 5;
    auto g1 = expansion_gamma_orders({mpq_class(1, 6 * p), mpq_class(1, 6 * p)}, {-1, -1});
    REQUIRE(g1.has_value());
    CHECK(*g1 == mpq_class(1, 6 * p));
    CHECK_FALSE(expansion_gamma_orders({mpq_class(1, 2)}, {0}).has_value());
    CHECK_FALSE(expansion_gamma_orders({mpq_class(1, 2), 1}, {3, 0}).has_value());

    // case 2 with alpha <= gamma': gamma = alpha
    mpq_class al(1, 30);
    CHECK(expansion_gamma_profiles({1, 1}, al, {mpq_class(-1), mpq_class(-2)}) <= al);
    CHECK(expansion_gamma_profiles({10, 10}, al, {mpq_class(-1, 100), 0}) == al);
}

TEST_CASE("profile algebra is sound on sampled series shapes") {
    // t^o R[[t]]-type profiles multiply by adding orders
    auto a = EndProfile::integral(-3);
    auto b = EndProfile::integral(5);
    auto ab = prof_mul(a, b);
    CHECK(ab.order == 2);
    CHECK(ab.floor0 == 0);

    auto s = EndProfile::with_slope(mpq_class(1, 8), mpq_class(1, 2), 1, -100);
    auto sa = prof_mul(s, a);
    CHECK(sa.has_slope);
    CHECK(sa.alpha == mpq_class(1, 8));
    CHECK(sa.beta == mpq_class(1, 2) - mpq_class(3, 8));

    auto sum = prof_add(prof_shift(a, 1), a);
    CHECK(sum.order == -3);

    auto tail = prof_geometric_tail(s, 6);
    CHECK(tail.floor0 == 1);
    CHECK(tail.has_slope);
    CHECK(tail.beta == 0);
    CHECK(tail.alpha <= mpq_class(1, 8));
}

TEST_CASE("residue plan: symmetric profiles and the validator") {
    PlanSide side;
    side.exact = false;
    side.has_slope = true;
    side.alpha = mpq_class(1, 8);
    side.beta = 0;
    side.order = -1000;

    auto plan = residue_plan(side, side, 2, 5);
    CHECK(plan.l1 == plan.l2);
    CHECK(plan.m_plus >= 0);
    CHECK(plan.m_minus <= -2);
    CHECK(plan.n1 == plan.target + plan.mlog_ceil);
    std::string why;
    CHECK(residue_plan_validate(plan, &why));

    // corrupting the windows must be caught
    auto bad = plan;
    bad.l1 = 2;
    bad.l2 = 2;
    CHECK_FALSE(residue_plan_validate(bad, &why));

    // bigger alpha gives a narrower scan range
    PlanSide tight = side;
    tight.alpha = mpq_class(1, 2);
    auto plan2 = residue_plan(tight, tight, 2, 5);
    CHECK(plan2.m_plus - plan2.m_minus < plan.m_plus - plan.m_minus);
    CHECK(residue_plan_validate(plan2));
}

TEST_CASE("residue plan with exact finite sides") {
    PlanSide eta;  // a form of order -2, exactly known
    eta.exact = true;
    eta.order = -2;
    PlanSide om;
    om.exact = true;
    om.order = -4;
    auto plan = residue_plan(eta, om, 3, 5);
    CHECK(plan.m_minus == -2);
    CHECK(plan.m_plus == 2);  // -order(omega) - 2
    CHECK(plan.l1 >= 3);
    CHECK(plan.l2 >= 1);
    CHECK(residue_plan_validate(plan));
}

TEST_CASE("degenerate profiles are rejected") {
    CHECK_THROWS_AS(EndProfile::with_slope(0, 0, 0, 0), Error);
    CHECK_THROWS_AS(local_lift_bound(0, 1, {1, 1}), Error);
}
