#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetalift/padic.hpp"
#include "zetalift/rat.hpp"

namespace zetalift {

/// Valuation bound v(a_m) >= -alpha*m + beta on the coefficients of a
/// Laurent series.  Planning and assertion metadata; never gates arithmetic.
struct BoundProfile {
    mpq_class alpha;  // > 0
    mpq_class beta;
};

/// Truncated Laurent series over Z_q on the window [lo, hi), all coefficients
/// carried modulo p^prec.
///
/// Window semantics: coefficients below lo are zero (mod p^prec), coefficients
/// at hi and above are unknown.  The plain arithmetic here claims exactly the
/// window the operands justify.  The *_capped variants implement the quotient
/// ring "coefficients mod t^cap" instead; they claim the full capped window and
/// are sound only under the planner's tail estimates, which is how the lift
/// and pairing computations use them.
class LaurentSeries {
public:
    LaurentSeries() = default;
    /// Zero series on a window.
    LaurentSeries(CtxPtr ctx, long lo, long hi, int prec);

    static LaurentSeries monomial(const ZqElement& c, long m, long window_hi);
    static LaurentSeries from_coeffs(CtxPtr ctx, long lo, const std::vector<ZqElement>& coeffs,
                                     int prec);

    const CtxPtr& ctx() const { return ctx_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + len(); }
    long len() const { return long(c_.size()) / ctx_->degree(); }
    int prec() const { return prec_; }
    bool in_window(long m) const { return m >= lo_ && m < hi(); }

    /// Coefficient of t^m; zero below the window, WindowMiss at or above hi.
    ZqElement coeff(long m) const;
    void set_coeff(long m, const ZqElement& v);
    /// Lowest exponent with a nonzero stored coefficient, if any.
    std::optional<long> order() const;
    bool is_zero() const;

    LaurentSeries truncated_prec(int prec) const;
    /// Restrict the window to [lo, new_hi).
    LaurentSeries truncated_hi(long new_hi) const;
    /// Drop stored zero coefficients at the bottom of the window.
    LaurentSeries normalized_lo() const;
    /// Raise lo to at least m; every dropped coefficient must be zero mod
    /// p^prec (PlanViolation otherwise).  Used at the planner's kill point.
    LaurentSeries trimmed_low(long m) const;

    std::string str() const;

    friend LaurentSeries ls_add(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries ls_sub(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries ls_neg(const LaurentSeries&);
    friend LaurentSeries ls_scale(const ZqElement&, const LaurentSeries&);
    friend LaurentSeries ls_mul(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries ls_mul_capped(const LaurentSeries&, const LaurentSeries&, long, long);
    friend LaurentSeries ls_shift(const LaurentSeries&, long);
    friend LaurentSeries detail_mul_window(const LaurentSeries&, const LaurentSeries&, long, long);

private:
    const mpz_class* raw(long m) const { return c_.data() + (m - lo_) * ctx_->degree(); }
    mpz_class* raw(long m) { return c_.data() + (m - lo_) * ctx_->degree(); }
    void reduce_all();

    CtxPtr ctx_;
    long lo_ = 0;
    int prec_ = 0;
    std::vector<mpz_class> c_;  // len * l entries, ascending exponent
};

LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries ls_sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries ls_neg(const LaurentSeries& a);
LaurentSeries ls_scale(const ZqElement& c, const LaurentSeries& a);
/// Multiply by t^k.
LaurentSeries ls_shift(const LaurentSeries& a, long k);

/// Product on the window [a.lo+b.lo, min(a.lo+b.hi, b.lo+a.hi)).
LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b);
/// Quotient-ring product: claims [max(a.lo+b.lo, cap_lo), cap_hi).
LaurentSeries ls_mul_capped(const LaurentSeries& a, const LaurentSeries& b, long cap_lo,
                            long cap_hi);

/// Inverse: factors t^d * (unit power series) and corrects for a p-divisible
/// lower tail by a finite geometric series.  NotInvertible if no coefficient
/// in the window is a unit.
LaurentSeries ls_inv(const LaurentSeries& a);
LaurentSeries ls_inv_capped(const LaurentSeries& a, long cap_lo, long cap_hi);

/// d/dt of a function (not a form): sum m a_m t^{m-1}.
LaurentSeries ls_derivative(const LaurentSeries& a);

/// Term-wise antiderivative of the form (sum a_m t^m) dt, constant 0.
/// Requires a_{-1} = 0 (NonzeroResidue).  Output precision drops by the
/// largest v_p(m+1) in the window; NonIntegral if a coefficient of the
/// antiderivative fails to lie in Z_q at that precision.
LaurentSeries ls_integrate(const LaurentSeries& w);
/// p^scale * integral, always integral; returns the scale used.
std::pair<LaurentSeries, long> ls_integrate_scaled(const LaurentSeries& w);

/// Res = a_{-1} of a form; WindowMiss if -1 is not determined by the window.
ZqElement ls_residue(const LaurentSeries& w);

/// Summation range certificate for a residue pairing, produced by the planner.
struct ResiduePairRange {
    long m_minus = -2;  // terms below are provably 0 mod p^target
    long m_plus = 0;    // terms above are provably 0 mod p^target
    int target_prec = 1;
};

/// Res_E w . int e  =  sum' e_m w_{-m-2} / (m+1) over the plan's range,
/// reported mod p^target.  e must have zero residue.
ZqElement ls_res_pair(const LaurentSeries& w, const LaurentSeries& e,
                      const ResiduePairRange& range);
/// p^scale * pairing as one exact Z_q value (no final division).
std::pair<ZqElement, long> ls_res_pair_scaled(const LaurentSeries& w, const LaurentSeries& e,
                                              const ResiduePairRange& range);

/// Newton square root: s(0) = 1, s^2 = a on the window.  Requires p != 2,
/// constant term 1, no terms below t^0 (BadLeadingTerm).
LaurentSeries ls_sqrt(const LaurentSeries& a);

/// Check v(a_m) >= ceil(-alpha m + beta) for every in-window m (bounds beyond
/// prec are vacuous).
bool ls_profile_check(const LaurentSeries& s, const BoundProfile& pb);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return ls_add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return ls_sub(a, b); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return ls_mul(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a) { return ls_neg(a); }

} // namespace zetalift
