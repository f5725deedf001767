#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "zetalift/rat.hpp"

namespace zetalift {

/// Target p-adic precision for the zeta computation, from the Weil bounds.
struct ZetaPrecision {
    long g = 1;
    long p = 5;
    int l = 1;
    mpz_class q;
    int n = 1;       // target precision, margin included
    int margin = 1;  // extra guard digits on top of the information bound
};

/// Smallest N with p^{2N} >= (2 C(2g,g))^2 q^g, plus the margin.  All
/// comparisons are exact integer comparisons.
ZetaPrecision weil_precision(long g, long p, int l, int margin = 1);

/// C(2g,i)^2 * q^i, the square of the Weil bound on |a_i|.
mpz_class weil_bound_sq(long g, long i, const mpz_class& q);

/// Smallest integer c >= 0 with p^c >= k (k >= 1).
int ceil_log_p(long p, const mpz_class& k);

/// v_p(n!) -- the division budget for characteristic-polynomial extraction.
long vp_factorial(long p, long n);

/// Coefficient-valuation bound for planning:
///   v(a_m) >= max(floor0, -alpha m + beta)   and   a_m = 0 for m < order,
/// the slope part being optional.  The algebra below mirrors how valuation
/// regions combine under ring operations; every rule is a sound weakening.
struct EndProfile {
    bool has_slope = false;
    mpq_class alpha;   // > 0 when has_slope
    mpq_class beta;
    mpq_class floor0;  // >= 0
    long order = 0;

    static EndProfile integral(long order);
    static EndProfile with_slope(mpq_class alpha, mpq_class beta, mpq_class floor0, long order);

    /// Exponent below which coefficients vanish mod p^n (order if no slope).
    long kill_point(int n) const;
    /// Drop beta to floor0 so slope conversions stay valid.
    EndProfile normalized() const;
};

EndProfile prof_mul(const EndProfile& a, const EndProfile& b);
EndProfile prof_add(const EndProfile& a, const EndProfile& b);
EndProfile prof_pow(const EndProfile& a, long k);
EndProfile prof_shift(const EndProfile& a, long k);       // multiply by t^k
EndProfile prof_derivative(const EndProfile& a);
EndProfile prof_scale_val(const EndProfile& a, const mpq_class& v);  // multiply by pi^v
/// Profile of sum_{k>=1} (-w)^k for w with floor0 >= 1 (geometric tails in
/// unit inversions).  n caps the number of p-adically relevant terms.
EndProfile prof_geometric_tail(const EndProfile& w, int n);

/// Valuation estimate for the solution of a local lift system from the pole
/// orders of its S-homogeneous parts: H_0 in pi^a t^{-d0} R[[t]], the S^1
/// tail in pi^b t^{-d1} R[[t]], degree-l parts in t^{-dl} R[[t]].
struct LiftEstimate {
    long a = 1;
    long b = 1;
    std::vector<long> d;  // d[0..N]; entries <= 0 mean no pole
    mpq_class nu;         // chosen nu in (0, a)
    mpq_class alpha_nu;   // resulting alpha (the profile slope)
    mpq_class beta;       // resulting beta (nu, or a limit value)
    mpq_class nu_tilde;   // closed-form crude maximizer
    mpq_class alpha_tilde;

    /// alpha_nu evaluated at an arbitrary nu (min+ of the defining entries).
    mpq_class alpha_at(const mpq_class& nu) const;
    EndProfile profile() const;
};

LiftEstimate local_lift_bound(long a, long b, const std::vector<long>& d);

/// Sharper per-coefficient variant: one constraint per actual Laurent
/// coefficient (S-degree l, exponent m < 0, valuation v), giving
/// alpha <= (v + (l-1) nu) / (-m).
struct ScanConstraint {
    long sdeg;
    long m;  // < 0
    long v;
};
LiftEstimate refine_lift_bound(long a, const std::vector<ScanConstraint>& cons,
                               const std::vector<long>& d_fallback);

/// Degree cutoff for the global lift: smallest c with
/// c / (2(d+1)p) + 1/2 >= N; coefficients beyond c*Gamma are discardable.
mpq_class global_lift_bound(const mpq_class& d, long p, int n);

/// Expansion estimates: given v(a_I) >= D.I + delta and end expansions,
/// a gamma with xi(g) in R_{gamma, delta}((t)).
std::optional<mpq_class> expansion_gamma_orders(const std::vector<mpq_class>& dvec,
                                                const std::vector<long>& orders);
mpq_class expansion_gamma_profiles(const std::vector<mpq_class>& dvec, const mpq_class& alpha,
                                   const std::vector<mpq_class>& betas);

/// One side of a residue pairing.
struct PlanSide {
    bool exact = true;      // computed by plain window arithmetic (no quotient ambiguity)
    bool has_slope = false; // overconvergence slope available
    mpq_class alpha;
    mpq_class beta;         // clamped <= 0 for planning
    long order = 0;

    static PlanSide from_profile(const EndProfile& p, bool exact_side);
    /// f(m) = max(0, -alpha m + beta), +infinity below order.
    bool f_ge(long m, const mpq_class& bound) const;
    mpq_class f_val(long m) const;  // without the +infinity case
    bool f_infinite(long m) const { return m < order; }
};

/// Windows, precisions and summation range for one residue pairing.
struct ResiduePlan {
    PlanSide eta;    // role 1: the integrated form
    PlanSide omega;  // role 2: the multiplier form
    int target = 1;  // N
    long p = 5;
    long m_minus = -2;
    long m_plus = 0;
    mpz_class mlog_k;  // M_log = log_p(mlog_k)
    int mlog_ceil = 0;
    int n1 = 1, n2 = 1;
    long l1 = 1, l2 = 1;  // required window depths: eta.hi >= l1, omega.hi >= l2

    struct Range {
        long m_minus, m_plus;
        int target_prec;
    };
    Range range() const { return {m_minus, m_plus, target}; }
};

ResiduePlan residue_plan(const PlanSide& eta, const PlanSide& omega, int n, long p);

/// Independent brute-force re-check of the factorization inequalities over
/// the scanned range, using the ambiguity structure of the actual windows.
bool residue_plan_validate(const ResiduePlan& plan, std::string* why = nullptr);

} // namespace zetalift
