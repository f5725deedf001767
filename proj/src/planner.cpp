#include "zetalift/planner.hpp"

#include <algorithm>
#include <limits>

#include "zetalift/errors.hpp"

namespace zetalift {

namespace {

constexpr long kNegOrd = std::numeric_limits<long>::min() / 8;

long sat_add(long a, long b) {
    if (a <= kNegOrd / 2 || b <= kNegOrd / 2) return kNegOrd;
    long s = a + b;
    return s < kNegOrd ? kNegOrd : s;
}

// r >= log_p(k), exactly (k >= 1)
bool ge_log_p(const mpq_class& r, long p, const mpz_class& k) {
    if (k <= 1) return r >= 0;
    if (r < 0) return false;
    mpz_class lhs, rhs, base = p;
    mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(r.get_num().get_mpz_t()));
    mpz_pow_ui(rhs.get_mpz_t(), k.get_mpz_t(), mpz_get_ui(r.get_den().get_mpz_t()));
    return lhs >= rhs;
}

// p^alpha >= a/b with a, b > 0 (monotone-tail test for the kill scans)
bool pow_ge_ratio(long p, const mpq_class& alpha, long a, long b) {
    mpz_class lhs, aw, bw, base = p, az = a, bz = b;
    mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(alpha.get_num().get_mpz_t()));
    mpz_pow_ui(aw.get_mpz_t(), az.get_mpz_t(), mpz_get_ui(alpha.get_den().get_mpz_t()));
    mpz_pow_ui(bw.get_mpz_t(), bz.get_mpz_t(), mpz_get_ui(alpha.get_den().get_mpz_t()));
    return lhs * bw >= aw;
}

const mpq_class kUnboundedAlpha = 1000000;

// selection objective: prefer the slope that keeps residue windows small
mpq_class window_objective(const mpq_class& alpha, const mpq_class& beta) {
    return (mpq_class(12) - beta) / alpha;
}

}  // namespace

ZetaPrecision weil_precision(long g, long p, int l, int margin) {
    if (g < 1) throw_validation("BadDegree", "zeta pipeline requires genus >= 1");
    ZetaPrecision zp;
    zp.g = g;
    zp.p = p;
    zp.l = l;
    mpz_class base = p;
    mpz_pow_ui(zp.q.get_mpz_t(), base.get_mpz_t(), size_t(l));
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * unsigned(g), unsigned(g));
    mpz_class target = 4 * binom * binom;  // (2 C(2g,g))^2
    mpz_class qg;
    mpz_pow_ui(qg.get_mpz_t(), zp.q.get_mpz_t(), size_t(g));
    target *= qg;
    int n = 0;
    mpz_class p2n = 1;
    mpz_class p2 = base * base;
    while (p2n < target) {
        p2n *= p2;
        ++n;
    }
    zp.n = n + margin;
    zp.margin = margin;
    return zp;
}

mpz_class weil_bound_sq(long g, long i, const mpz_class& q) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), 2 * unsigned(g), unsigned(i));
    mpz_class qi;
    mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), size_t(i));
    return binom * binom * qi;
}

int ceil_log_p(long p, const mpz_class& k) {
    int c = 0;
    mpz_class v = 1;
    while (v < k) {
        v *= p;
        ++c;
    }
    return c;
}

long vp_factorial(long p, long n) {
    long s = 0;
    long q = n / p;
    while (q > 0) {
        s += q;
        q /= p;
    }
    return s;
}

EndProfile EndProfile::integral(long order) {
    EndProfile r;
    r.order = order;
    r.floor0 = 0;
    return r;
}

EndProfile EndProfile::with_slope(mpq_class alpha, mpq_class beta, mpq_class floor0, long order) {
    EndProfile r;
    r.has_slope = true;
    r.alpha = std::move(alpha);
    r.beta = std::move(beta);
    r.floor0 = std::move(floor0);
    r.order = order;
    if (r.alpha <= 0) throw_validation("DegenerateProfile", "alpha must be positive");
    return r;
}

long EndProfile::kill_point(int n) const {
    if (!has_slope) return order;
    mpq_class cut = (beta - n) / alpha;  // bound >= n for m <= cut
    long k = floor_q_long(cut) + 1;
    return std::max(order, k);
}

EndProfile EndProfile::normalized() const {
    EndProfile r = *this;
    if (r.has_slope && r.beta > r.floor0) r.beta = r.floor0;
    return r;
}

EndProfile prof_mul(const EndProfile& a0, const EndProfile& b0) {
    EndProfile a = a0.normalized(), b = b0.normalized();
    EndProfile r;
    r.order = sat_add(a.order, b.order);
    r.floor0 = a.floor0 + b.floor0;
    bool have = false;
    mpq_class best_a, best_b, best_obj;
    auto consider = [&](const mpq_class& al, const mpq_class& be) {
        mpq_class obj = window_objective(al, be);
        if (!have || obj < best_obj) {
            best_a = al;
            best_b = be;
            best_obj = obj;
            have = true;
        }
    };
    if (a.has_slope && b.has_slope) consider(std::min(a.alpha, b.alpha), a.beta + b.beta);
    if (a.has_slope && b.order > kNegOrd / 2)
        consider(a.alpha, a.beta + a.alpha * b.order + b.floor0);
    if (b.has_slope && a.order > kNegOrd / 2)
        consider(b.alpha, b.beta + b.alpha * a.order + a.floor0);
    if (have) {
        r.has_slope = true;
        r.alpha = best_a;
        r.beta = best_b;
    }
    return r;
}

EndProfile prof_add(const EndProfile& a0, const EndProfile& b0) {
    EndProfile a = a0.normalized(), b = b0.normalized();
    EndProfile r;
    r.order = std::min(a.order, b.order);
    r.floor0 = std::min(a.floor0, b.floor0);
    if (a.has_slope && b.has_slope) {
        r.has_slope = true;
        r.alpha = std::min(a.alpha, b.alpha);
        r.beta = std::min(a.beta, b.beta);
    } else if (a.has_slope && b.order > kNegOrd / 2) {
        r.has_slope = true;
        r.alpha = a.alpha;
        r.beta = std::min(a.beta, mpq_class(b.floor0 + a.alpha * b.order));
    } else if (b.has_slope && a.order > kNegOrd / 2) {
        r.has_slope = true;
        r.alpha = b.alpha;
        r.beta = std::min(b.beta, mpq_class(a.floor0 + b.alpha * a.order));
    }
    return r;
}

EndProfile prof_pow(const EndProfile& a, long k) {
    if (k < 1) throw_validation("BadDegree", "profile power must be positive");
    EndProfile r = a;
    for (long i = 1; i < k; ++i) r = prof_mul(r, a);
    return r;
}

EndProfile prof_shift(const EndProfile& a, long k) {
    EndProfile r = a;
    r.order = sat_add(r.order, k);
    if (r.has_slope) r.beta += r.alpha * k;
    return r;
}

EndProfile prof_derivative(const EndProfile& a) {
    EndProfile r = a;
    r.order = sat_add(r.order, -1);
    if (r.has_slope) r.beta -= r.alpha;
    return r;
}

EndProfile prof_scale_val(const EndProfile& a, const mpq_class& v) {
    EndProfile r = a;
    r.floor0 += v;
    if (r.has_slope) r.beta += v;
    return r;
}

EndProfile prof_geometric_tail(const EndProfile& w0, int n) {
    EndProfile w = w0.normalized();
    if (w.floor0 < 1)
        throw_validation("DegenerateProfile", "geometric tail needs pi-divisible terms");
    long kmax = std::max<long>(1, ceil_q_long(mpq_class(n) / w.floor0));
    EndProfile r;
    r.floor0 = w.floor0;
    r.order = w.order < 0 ? sat_add(0, w.order * kmax) : w.order;
    if (w.has_slope) {
        r.has_slope = true;
        mpq_class gap = w.floor0 - w.beta;
        r.alpha = gap == 0 ? w.alpha : std::min(w.alpha, mpq_class(w.floor0 * w.alpha / gap));
        r.beta = 0;
    }
    return r;
}

mpq_class LiftEstimate::alpha_at(const mpq_class& nu_) const {
    bool have = false;
    mpq_class best;
    auto consider = [&](const mpq_class& v) {
        if (v <= 0) return;
        if (!have || v < best) {
            best = v;
            have = true;
        }
    };
    if (!d.empty() && d[0] > 0) consider((mpq_class(a) - nu_) / d[0]);
    if (d.size() > 1 && d[1] > 0) consider(mpq_class(b) / d[1]);
    for (size_t l = 2; l < d.size(); ++l)
        if (d[l] > 0) consider(mpq_class(long(l) - 1) * nu_ / d[l]);
    return have ? best : kUnboundedAlpha;
}

EndProfile LiftEstimate::profile() const {
    return EndProfile::with_slope(alpha_nu, beta, mpq_class(a), kNegOrd);
}

static void pick_best(LiftEstimate& est,
                      const std::vector<std::pair<mpq_class, mpq_class>>& cands) {
    bool have = false;
    mpq_class best_obj;
    for (const auto& [nu, beta] : cands) {
        mpq_class al = est.alpha_at(nu);
        if (al <= 0) continue;
        mpq_class obj = window_objective(al, beta);
        if (!have || obj < best_obj) {
            best_obj = obj;
            est.nu = nu;
            est.alpha_nu = al;
            est.beta = beta;
            have = true;
        }
    }
    if (!have) throw_validation("DegenerateProfile", "no admissible nu for the lift estimate");
}

LiftEstimate local_lift_bound(long a, long b, const std::vector<long>& d) {
    if (a < 1 || b < 1 || d.size() < 2)
        throw_validation("DegenerateProfile", "lift estimate needs a, b >= 1 and degree >= 1");
    LiftEstimate est;
    est.a = a;
    est.b = b;
    est.d = d;

    // crude maximizer: pick the affine cover d_l <= (l-1) gamma + delta
    // (l = 2..N) minimizing gamma + delta, by vertex enumeration
    mpq_class gamma(1, 1024), delta = 0;
    {
        std::vector<std::pair<mpq_class, mpq_class>> verts;
        mpq_class dmax = 0, slope_max = 0;
        for (size_t l = 2; l < d.size(); ++l) {
            dmax = std::max(dmax, mpq_class(d[l]));
            slope_max = std::max(slope_max, mpq_class(mpq_class(d[l]) / mpq_class(long(l) - 1)));
        }
        verts.push_back({0, dmax});
        verts.push_back({slope_max, 0});
        for (size_t l = 2; l < d.size(); ++l)
            for (size_t k = l + 1; k < d.size(); ++k) {
                mpq_class g0 = mpq_class(d[k] - d[l]) / mpq_class(long(k) - long(l));
                mpq_class e0 = mpq_class(d[l]) - mpq_class(long(l) - 1) * g0;
                verts.push_back({g0, e0});
            }
        bool have = false;
        for (const auto& [g0, e0] : verts) {
            if (g0 < 0 || e0 < 0) continue;
            bool feasible = true;
            for (size_t l = 2; l < d.size(); ++l)
                if (mpq_class(long(l) - 1) * g0 + e0 < d[l]) feasible = false;
            if (!feasible) continue;
            if (!have || g0 + e0 < gamma + delta) {
                gamma = g0;
                delta = e0;
                have = true;
            }
        }
        if (!have) {
            gamma = 0;
            delta = 0;
        }
        if (gamma <= 0) gamma = mpq_class(1, 1024);
    }
    if (d[0] > 0) {
        est.nu_tilde = mpq_class(a) * (gamma + delta) / (mpq_class(d[0]) + gamma + delta);
    } else {
        est.nu_tilde = mpq_class(a) * 1023 / 1024;
    }
    {
        mpq_class u = mpq_class(a) / (mpq_class(d[0] > 0 ? d[0] : 0) + gamma + delta);
        if (d.size() > 1 && d[1] > 0)
            est.alpha_tilde = std::min(mpq_class(mpq_class(b) / d[1]), u);
        else
            est.alpha_tilde = u;
    }

    std::vector<std::pair<mpq_class, mpq_class>> cands;
    for (int j = 1; j < 16; ++j) {
        mpq_class nu = mpq_class(a) * j / 16;
        cands.push_back({nu, nu});
    }
    if (est.nu_tilde > 0 && est.nu_tilde < a) cands.push_back({est.nu_tilde, est.nu_tilde});
    bool deg2_poles = false;
    for (size_t l = 2; l < d.size(); ++l)
        if (d[l] > 0) deg2_poles = true;
    if (!deg2_poles) cands.push_back({0, 0});
    if (d[0] <= 0) cands.push_back({mpq_class(a), mpq_class(a)});
    pick_best(est, cands);
    return est;
}

LiftEstimate refine_lift_bound(long a, const std::vector<ScanConstraint>& cons,
                               const std::vector<long>& d_fallback) {
    if (cons.empty()) return local_lift_bound(a, 1, d_fallback);
    LiftEstimate est;
    est.a = a;
    est.b = 1;
    est.d = d_fallback;

    auto alpha_at_scan = [&](const mpq_class& nu) {
        bool have = false;
        mpq_class best;
        for (const auto& c : cons) {
            if (c.m >= 0) continue;
            mpq_class num = mpq_class(c.v) + mpq_class(c.sdeg - 1) * nu;
            if (num <= 0) return mpq_class(0);
            mpq_class v = num / mpq_class(-c.m);
            if (!have || v < best) {
                best = v;
                have = true;
            }
        }
        return have ? best : kUnboundedAlpha;
    };

    bool have = false;
    mpq_class best_obj;
    auto consider = [&](const mpq_class& nu, const mpq_class& beta) {
        mpq_class al = alpha_at_scan(nu);
        if (al <= 0) return;
        mpq_class obj = window_objective(al, beta);
        if (!have || obj < best_obj) {
            best_obj = obj;
            est.nu = nu;
            est.alpha_nu = al;
            est.beta = beta;
            have = true;
        }
    };
    for (int j = 1; j < 64; ++j) consider(mpq_class(a) * j / 64, mpq_class(a) * j / 64);
    consider(0, 0);
    consider(mpq_class(a), mpq_class(a));
    if (!have) return local_lift_bound(a, 1, d_fallback);
    est.nu_tilde = est.nu;
    est.alpha_tilde = est.alpha_nu;
    return est;
}

mpq_class global_lift_bound(const mpq_class& d, long p, int n) {
    mpq_class c = (mpq_class(n) - mpq_class(1, 2)) * 2 * (d + 1) * p;
    return c > 0 ? c : mpq_class(0);
}

std::optional<mpq_class> expansion_gamma_orders(const std::vector<mpq_class>& dvec,
                                                const std::vector<long>& orders) {
    if (dvec.size() != orders.size())
        throw_validation("BadDegree", "bound vector length mismatch");
    bool have = false;
    mpq_class best;
    for (size_t i = 0; i < dvec.size(); ++i) {
        if (orders[i] >= 0) continue;
        mpq_class v = dvec[i] / mpq_class(-orders[i]);
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    if (!have) return std::nullopt;
    return best;
}

mpq_class expansion_gamma_profiles(const std::vector<mpq_class>& dvec, const mpq_class& alpha,
                                   const std::vector<mpq_class>& betas) {
    if (dvec.size() != betas.size())
        throw_validation("BadDegree", "bound vector length mismatch");
    bool have = false;
    mpq_class gp;
    for (size_t i = 0; i < dvec.size(); ++i) {
        if (betas[i] >= 0) continue;
        mpq_class v = -dvec[i] * alpha / betas[i];
        if (!have || v < gp) {
            gp = v;
            have = true;
        }
    }
    if (!have) return alpha;
    return std::min(gp, alpha);
}

PlanSide PlanSide::from_profile(const EndProfile& p, bool exact_side) {
    PlanSide s;
    s.exact = exact_side;
    s.order = p.order;
    if (p.has_slope) {
        s.has_slope = true;
        s.alpha = p.alpha;
        s.beta = std::min(p.beta, mpq_class(0));  // beta <= 0 for the plan
    }
    return s;
}

mpq_class PlanSide::f_val(long m) const {
    if (!has_slope) return 0;
    mpq_class v = -alpha * m + beta;
    return v > 0 ? v : mpq_class(0);
}

bool PlanSide::f_ge(long m, const mpq_class& bound) const {
    if (f_infinite(m)) return true;
    return f_val(m) >= bound;
}

// kill threshold above: for all m > T, alpha (m+2) + beta - n >= log_p(m+1)
static long scan_kill_up(const PlanSide& s, int n, long p) {
    long last_fail = -1;
    for (long m = 0;; ++m) {
        mpq_class lhs = s.alpha * (m + 2) + s.beta - n;
        bool ok = ge_log_p(lhs, p, mpz_class(m + 1));
        if (!ok) last_fail = m;
        if (ok && m > last_fail + 4 && pow_ge_ratio(p, s.alpha, m + 2, m + 1)) break;
        if (m > 100000000) throw_precision("PlanViolation", "kill scan did not terminate");
    }
    return std::max(last_fail, 0L);
}

// kill threshold below: for all m < T, alpha (-m) + beta - n >= log_p(-m-1)
static long scan_kill_down(const PlanSide& s, int n, long p) {
    long first_fail = 1;  // sentinel: none
    for (long m = -2;; --m) {
        mpq_class lhs = s.alpha * (-m) + s.beta - n;
        bool ok = ge_log_p(lhs, p, mpz_class(-m - 1));
        if (!ok) first_fail = m;
        if (ok && (first_fail == 1 || m < first_fail - 4) && pow_ge_ratio(p, s.alpha, -m, -m - 1))
            break;
        if (m < -100000000) throw_precision("PlanViolation", "kill scan did not terminate");
    }
    return first_fail == 1 ? -2 : first_fail;
}

ResiduePlan residue_plan(const PlanSide& eta, const PlanSide& omega, int n, long p) {
    ResiduePlan plan;
    plan.eta = eta;
    plan.omega = omega;
    plan.target = n;
    plan.p = p;

    long t_up = std::max(-omega.order - 2, 0L);
    if (omega.has_slope) t_up = std::min(t_up, scan_kill_up(omega, n, p));
    plan.m_plus = t_up;

    long t_dn = eta.order;
    if (eta.has_slope) t_dn = std::max(t_dn, scan_kill_down(eta, n, p));
    plan.m_minus = std::min(-2L, t_dn);

    plan.mlog_k = std::max(mpz_class(plan.m_plus + 1), mpz_class(-plan.m_minus - 1));
    if (plan.mlog_k < 1) plan.mlog_k = 1;
    plan.mlog_ceil = ceil_log_p(p, plan.mlog_k);
    plan.n1 = plan.n2 = n + plan.mlog_ceil;
    mpq_class goal = mpq_class(n) + plan.mlog_ceil;

    long l1 = plan.m_plus + 1;
    long l2 = -plan.m_minus - 1;

    // smallest m != -1 with f1(m) = 0
    long m0 = eta.order;
    if (eta.has_slope) m0 = std::max(m0, ceil_q_long(eta.beta / eta.alpha));
    if (m0 == -1) m0 = 0;
    if (omega.has_slope) {
        mpq_class need = (goal - omega.beta) / omega.alpha - m0 - 2;
        l2 = std::max(l2, ceil_q_long(need));
    }
    // largest m != -1 with f2(-m-2) = 0
    long m1 = -omega.order - 2;
    if (omega.has_slope) m1 = std::min(m1, floor_q_long(-2 - omega.beta / omega.alpha));
    if (m1 == -1) m1 = -2;
    if (eta.has_slope) {
        mpq_class need = m1 + (goal - eta.beta) / eta.alpha;
        l1 = std::max(l1, ceil_q_long(need));
    }
    if (eta.has_slope && omega.has_slope) {
        if (omega.alpha > eta.alpha) {
            mpq_class need =
                (goal - eta.beta - omega.beta + eta.alpha * plan.m_minus) / omega.alpha -
                plan.m_minus - 2;
            l2 = std::max(l2, ceil_q_long(need));
        }
        if (eta.alpha > omega.alpha) {
            mpq_class need =
                plan.m_plus +
                (goal - eta.beta - omega.beta - omega.alpha * (plan.m_plus + 2)) / eta.alpha;
            l1 = std::max(l1, ceil_q_long(need));
        }
    }
    plan.l1 = std::max(1L, l1);
    plan.l2 = std::max(1L, l2);
    return plan;
}

bool residue_plan_validate(const ResiduePlan& plan, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (long m = plan.m_minus; m <= plan.m_plus; ++m) {
        if (m == -1) continue;
        mpq_class need = mpq_class(plan.target) + vp_of(plan.p, m + 1);
        bool ok1 = plan.eta.exact || plan.eta.f_infinite(m - plan.l1) ||
                   plan.omega.f_infinite(-m - 2) ||
                   plan.eta.f_val(m - plan.l1) + plan.omega.f_val(-m - 2) >= need;
        bool ok2 = plan.omega.exact || plan.omega.f_infinite(-m - 2 - plan.l2) ||
                   plan.eta.f_infinite(m) ||
                   plan.eta.f_val(m) + plan.omega.f_val(-m - 2 - plan.l2) >= need;
        if (!(ok1 && ok2))
            return fail("factorization inequality fails at m = " + std::to_string(m));
    }
    // spot-check the kill conditions just beyond the scanned range
    auto dead = [&](long m) {
        mpq_class need = mpq_class(plan.target) + vp_of(plan.p, m + 1);
        return plan.omega.f_infinite(-m - 2) || plan.eta.f_infinite(m) ||
               plan.eta.f_val(m) + plan.omega.f_val(-m - 2) >= need;
    };
    for (long m = plan.m_plus + 1; m <= plan.m_plus + 64; ++m)
        if (!dead(m)) return fail("tail not killed at m = " + std::to_string(m));
    for (long m = plan.m_minus - 64; m < plan.m_minus; ++m)
        if (m != -1 && !dead(m)) return fail("tail not killed at m = " + std::to_string(m));
    return true;
}

} // namespace zetalift
