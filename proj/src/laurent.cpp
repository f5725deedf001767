#include "zetalift/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace zetalift {

LaurentSeries::LaurentSeries(CtxPtr ctx, long lo, long hi, int prec)
    : ctx_(std::move(ctx)), lo_(lo), prec_(prec) {
    if (hi <= lo) throw_validation("EmptyWindow", "window is empty");
    if (prec < 1 || prec > ctx_->n_work()) throw_validation("BadPrecision", "series precision");
    c_.resize(size_t(hi - lo) * ctx_->degree());
}

LaurentSeries LaurentSeries::monomial(const ZqElement& c, long m, long window_hi) {
    LaurentSeries r(c.ctx(), m, window_hi, c.prec());
    r.set_coeff(m, c);
    return r;
}

LaurentSeries LaurentSeries::from_coeffs(CtxPtr ctx, long lo,
                                         const std::vector<ZqElement>& coeffs, int prec) {
    LaurentSeries r(ctx, lo, lo + long(coeffs.size()), prec);
    for (size_t i = 0; i < coeffs.size(); ++i) r.set_coeff(lo + long(i), coeffs[i]);
    return r;
}

ZqElement LaurentSeries::coeff(long m) const {
    if (m >= hi()) throw_precision("WindowMiss", "coefficient above the window");
    ZqElement r = ctx_->zero(prec_);
    if (m < lo_) return r;
    const mpz_class* src = raw(m);
    return ctx_->from_coeffs(std::vector<mpz_class>(src, src + ctx_->degree()), prec_);
}

void LaurentSeries::set_coeff(long m, const ZqElement& v) {
    if (!in_window(m)) throw_precision("WindowMiss", "coefficient outside the window");
    const mpz_class& pk = ctx_->pow_p(prec_);
    mpz_class* dst = raw(m);
    for (int i = 0; i < ctx_->degree(); ++i)
        mpz_fdiv_r(dst[i].get_mpz_t(), v.coeffs()[i].get_mpz_t(), pk.get_mpz_t());
}

std::optional<long> LaurentSeries::order() const {
    int l = ctx_->degree();
    for (long m = lo_; m < hi(); ++m) {
        const mpz_class* p = raw(m);
        for (int i = 0; i < l; ++i)
            if (p[i] != 0) return m;
    }
    return std::nullopt;
}

bool LaurentSeries::is_zero() const { return !order().has_value(); }

LaurentSeries LaurentSeries::truncated_prec(int prec) const {
    if (prec >= prec_) return *this;
    LaurentSeries r(ctx_, lo_, hi(), prec);
    const mpz_class& pk = ctx_->pow_p(prec);
    for (size_t i = 0; i < c_.size(); ++i)
        mpz_fdiv_r(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), pk.get_mpz_t());
    return r;
}

LaurentSeries LaurentSeries::truncated_hi(long new_hi) const {
    if (new_hi >= hi()) return *this;
    if (new_hi <= lo_) throw_validation("EmptyWindow", "truncation empties the window");
    LaurentSeries r(ctx_, lo_, new_hi, prec_);
    std::copy(c_.begin(), c_.begin() + size_t(new_hi - lo_) * ctx_->degree(), r.c_.begin());
    return r;
}

LaurentSeries LaurentSeries::normalized_lo() const {
    long o = order().value_or(hi() - 1);
    if (o == lo_) return *this;
    LaurentSeries r(ctx_, o, hi(), prec_);
    std::copy(c_.begin() + size_t(o - lo_) * ctx_->degree(), c_.end(), r.c_.begin());
    return r;
}

LaurentSeries LaurentSeries::trimmed_low(long m) const {
    if (m <= lo_) return *this;
    if (m >= hi()) throw_precision("WindowMiss", "trim point above the window");
    int l = ctx_->degree();
    for (long k = lo_; k < m; ++k) {
        const mpz_class* p = raw(k);
        for (int i = 0; i < l; ++i)
            if (p[i] != 0)
                throw_precision("PlanViolation",
                                "nonzero coefficient at t^" + std::to_string(k) +
                                    " below the planned kill point " + std::to_string(m));
    }
    LaurentSeries r(ctx_, m, hi(), prec_);
    std::copy(c_.begin() + size_t(m - lo_) * l, c_.end(), r.c_.begin());
    return r;
}

std::string LaurentSeries::str() const {
    std::ostringstream os;
    os << "[" << lo_ << "," << hi() << ")@" << prec_ << ":";
    for (long m = lo_; m < hi(); ++m) {
        auto c = coeff(m);
        if (c.is_zero()) continue;
        os << " " << c.str() << "*t^" << m;
    }
    return os.str();
}

void LaurentSeries::reduce_all() {
    const mpz_class& pk = ctx_->pow_p(prec_);
    for (auto& x : c_) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
}

static void check_same_ctx(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.ctx() != b.ctx())
        throw_validation("ContextMismatch", "series built over different contexts");
}

LaurentSeries ls_add(const LaurentSeries& a, const LaurentSeries& b) {
    check_same_ctx(a, b);
    long lo = std::min(a.lo(), b.lo());
    long hi = std::min(a.hi(), b.hi());
    LaurentSeries r(a.ctx(), lo, hi, std::min(a.prec(), b.prec()));
    int l = a.ctx()->degree();
    for (long m = lo; m < hi; ++m) {
        mpz_class* dst = r.raw(m);
        if (m >= a.lo()) {
            const mpz_class* s = a.raw(m);
            for (int i = 0; i < l; ++i) dst[i] += s[i];
        }
        if (m >= b.lo()) {
            const mpz_class* s = b.raw(m);
            for (int i = 0; i < l; ++i) dst[i] += s[i];
        }
    }
    r.reduce_all();
    return r;
}

LaurentSeries ls_sub(const LaurentSeries& a, const LaurentSeries& b) {
    return ls_add(a, ls_neg(b));
}

LaurentSeries ls_neg(const LaurentSeries& a) {
    LaurentSeries r(a.ctx(), a.lo(), a.hi(), a.prec());
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = -a.c_[i];
    r.reduce_all();
    return r;
}

LaurentSeries ls_scale(const ZqElement& c, const LaurentSeries& a) {
    if (c.ctx() != a.ctx()) throw_validation("ContextMismatch", "scalar from another context");
    LaurentSeries r(a.ctx(), a.lo(), a.hi(), std::min(a.prec(), c.prec()));
    int l = a.ctx()->degree();
    if (l == 1) {
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i] * c.coeffs()[0];
        r.reduce_all();
        return r;
    }
    std::vector<mpz_class> tmp(2 * l - 1);
    for (long m = a.lo(); m < a.hi(); ++m) {
        a.ctx()->raw_mul(tmp.data(), a.raw(m), c.coeffs().data());
        a.ctx()->raw_reduce(tmp.data(), r.raw(m), r.ctx()->pow_p(r.prec()));
    }
    return r;
}

LaurentSeries ls_shift(const LaurentSeries& a, long k) {
    LaurentSeries r = a;
    r.lo_ += k;
    return r;
}

LaurentSeries detail_mul_window(const LaurentSeries& a, const LaurentSeries& b, long rlo, long rhi) {
    const auto& ctx = a.ctx();
    int l = ctx->degree();
    int prec = std::min(a.prec(), b.prec());
    if (rhi <= rlo) throw_validation("EmptyWindow", "product window is empty");
    LaurentSeries r(ctx, rlo, rhi, prec);
    if (l == 1) {
        for (long i = a.lo(); i < a.hi(); ++i) {
            const mpz_class& ai = *a.raw(i);
            if (ai == 0) continue;
            long jlo = std::max(b.lo(), rlo - i);
            long jhi = std::min(b.hi(), rhi - i);
            for (long j = jlo; j < jhi; ++j) {
                const mpz_class& bj = *b.raw(j);
                if (bj == 0) continue;
                mpz_addmul(r.raw(i + j)->get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
            }
        }
        r.reduce_all();
        return r;
    }
    std::vector<mpz_class> acc(size_t(rhi - rlo) * (2 * l - 1));
    for (long i = a.lo(); i < a.hi(); ++i) {
        const mpz_class* ai = a.raw(i);
        bool az = true;
        for (int u = 0; u < l; ++u)
            if (ai[u] != 0) { az = false; break; }
        if (az) continue;
        long jlo = std::max(b.lo(), rlo - i);
        long jhi = std::min(b.hi(), rhi - i);
        for (long j = jlo; j < jhi; ++j) {
            const mpz_class* bj = b.raw(j);
            mpz_class* dst = acc.data() + size_t(i + j - rlo) * (2 * l - 1);
            for (int u = 0; u < l; ++u) {
                if (ai[u] == 0) continue;
                for (int v = 0; v < l; ++v) {
                    if (bj[v] == 0) continue;
                    mpz_addmul(dst[u + v].get_mpz_t(), ai[u].get_mpz_t(), bj[v].get_mpz_t());
                }
            }
        }
    }
    const mpz_class& pk = ctx->pow_p(prec);
    for (long m = rlo; m < rhi; ++m)
        ctx->raw_reduce(acc.data() + size_t(m - rlo) * (2 * l - 1), r.raw(m), pk);
    return r;
}

LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b) {
    check_same_ctx(a, b);
    long rlo = a.lo() + b.lo();
    long rhi = std::min(a.lo() + b.hi(), b.lo() + a.hi());
    return detail_mul_window(a, b, rlo, rhi);
}

LaurentSeries ls_mul_capped(const LaurentSeries& a, const LaurentSeries& b, long cap_lo,
                            long cap_hi) {
    check_same_ctx(a, b);
    long rlo = a.lo() + b.lo();
    if (rlo >= cap_hi) return LaurentSeries(a.ctx(), cap_lo, cap_hi, std::min(a.prec(), b.prec()));
    auto r = detail_mul_window(a, b, rlo, cap_hi);
    if (cap_lo > rlo) r = r.trimmed_low(std::min(cap_lo, r.hi() - 1));
    return r;
}

// inverse of t^{-d} * (series from exponent d up), which has a unit constant term
static LaurentSeries unit_part_inverse(const LaurentSeries& a, long d, long out_len) {
    const auto& ctx = a.ctx();
    int prec = a.prec();
    long n = std::max<long>(1, std::min(out_len, a.hi() - d));
    std::vector<ZqElement> g(size_t(n), ctx->zero(prec));
    g[0] = zq_inv(a.coeff(d));
    ZqElement g0n = zq_neg(g[0]);
    for (long m = 1; m < n; ++m) {
        ZqElement s = ctx->zero(prec);
        for (long i = 1; i <= m; ++i) {
            if (d + i >= a.hi()) break;
            s = zq_add(s, zq_mul(a.coeff(d + i), g[size_t(m - i)]));
        }
        g[size_t(m)] = zq_mul(g0n, s);
    }
    return ls_shift(LaurentSeries::from_coeffs(ctx, 0, g, prec), -d);
}

static LaurentSeries inv_impl(const LaurentSeries& a0, bool capped, long cap_lo, long cap_hi) {
    LaurentSeries a = a0.normalized_lo();
    int prec = a.prec();
    long d = a.lo();
    bool found = false;
    for (; d < a.hi(); ++d) {
        auto v = zq_valuation(a.coeff(d));
        if (!v.at_least && v.v == 0) { found = true; break; }
    }
    if (!found) throw_validation("NotInvertible", "no unit coefficient in the window");

    long want_len = capped ? cap_hi + d : a.hi() - d;
    LaurentSeries uinv = unit_part_inverse(a, d, want_len);
    if (capped && uinv.hi() > cap_hi) uinv = uinv.truncated_hi(cap_hi);

    bool has_small = a.lo() < d && !a.truncated_hi(d).is_zero();
    if (!has_small) return uinv;

    LaurentSeries small = a.truncated_hi(d).normalized_lo();
    auto mul2 = [&](const LaurentSeries& x, const LaurentSeries& y) {
        return capped ? ls_mul_capped(x, y, cap_lo, cap_hi) : ls_mul(x, y);
    };
    LaurentSeries w = mul2(small, uinv);
    LaurentSeries r = uinv;
    LaurentSeries term = uinv;
    LaurentSeries nw = ls_neg(w);
    for (int k = 1; k < prec; ++k) {
        term = mul2(nw, term);
        if (term.is_zero()) break;
        r = ls_add(r, term);
    }
    return r;
}

LaurentSeries ls_inv(const LaurentSeries& a) { return inv_impl(a, false, 0, 0); }

LaurentSeries ls_inv_capped(const LaurentSeries& a, long cap_lo, long cap_hi) {
    return inv_impl(a, true, cap_lo, cap_hi);
}

LaurentSeries ls_derivative(const LaurentSeries& a) {
    LaurentSeries r(a.ctx(), a.lo() - 1, a.hi() - 1, a.prec());
    for (long m = a.lo(); m < a.hi(); ++m) {
        if (m == 0) continue;
        auto c = a.coeff(m);
        std::vector<mpz_class> scaled(c.coeffs());
        for (auto& x : scaled) x *= m;
        r.set_coeff(m - 1, a.ctx()->from_coeffs(scaled, a.prec()));
    }
    return r;
}

// m+1 = sign * p^v * u with u > 0 prime to p
static void split_divisor(long p, long m1, long& v, mpz_class& u, bool& neg) {
    neg = m1 < 0;
    long n = neg ? -m1 : m1;
    v = 0;
    while (n % p == 0) { n /= p; ++v; }
    u = n;
}

std::pair<LaurentSeries, long> ls_integrate_scaled(const LaurentSeries& w) {
    const auto& ctx = w.ctx();
    long p = ctx->p();
    if (w.hi() <= -1) throw_precision("WindowMiss", "residue coefficient not in window");
    if (w.lo() <= -1 && !w.coeff(-1).is_zero())
        throw_precision("NonzeroResidue", "form has nonzero residue at this precision");
    long vmax = 0;
    for (long m = w.lo(); m < w.hi(); ++m)
        if (m != -1) vmax = std::max(vmax, vp_of(p, m + 1));
    LaurentSeries r(ctx, w.lo() + 1, w.hi() + 1, w.prec());
    const mpz_class& pk = ctx->pow_p(w.prec());
    for (long m = w.lo(); m < w.hi(); ++m) {
        if (m == -1) continue;
        auto c = w.coeff(m);
        if (c.is_zero()) continue;
        long v;
        mpz_class u;
        bool neg;
        split_divisor(p, m + 1, v, u, neg);
        mpz_class uinv;
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
        mpz_class factor = uinv;
        for (long k = 0; k < vmax - v; ++k) factor *= p;
        if (neg) factor = -factor;
        std::vector<mpz_class> cc(c.coeffs());
        for (auto& x : cc) x *= factor;
        r.set_coeff(m + 1, ctx->from_coeffs(cc, w.prec()));
    }
    return {r, vmax};
}

LaurentSeries ls_integrate(const LaurentSeries& w) {
    auto [scaled, vmax] = ls_integrate_scaled(w);
    if (vmax == 0) return scaled;
    int prec = w.prec() - int(vmax);
    if (prec < 1) throw_precision("PlanViolation", "integration exhausts the precision");
    const auto& ctx = w.ctx();
    mpz_class pv = ctx->pow_p(int(vmax));
    LaurentSeries r(ctx, scaled.lo(), scaled.hi(), prec);
    for (long m = scaled.lo(); m < scaled.hi(); ++m) {
        auto c = scaled.coeff(m);
        std::vector<mpz_class> cc(c.coeffs());
        for (auto& x : cc) {
            if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
                throw_precision("NonIntegral", "antiderivative has a non-integral coefficient");
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
        }
        r.set_coeff(m, ctx->from_coeffs(cc, prec));
    }
    return r;
}

ZqElement ls_residue(const LaurentSeries& w) {
    if (w.hi() <= -1) throw_precision("WindowMiss", "residue coefficient not in window");
    return w.coeff(-1);
}

std::pair<ZqElement, long> ls_res_pair_scaled(const LaurentSeries& w, const LaurentSeries& e,
                                              const ResiduePairRange& range) {
    check_same_ctx(w, e);
    const auto& ctx = w.ctx();
    long p = ctx->p();
    if (e.hi() <= -1) throw_precision("WindowMiss", "eta residue coefficient not in window");
    if (e.lo() <= -1 && !e.coeff(-1).is_zero())
        throw_precision("NonzeroResidue", "eta has nonzero residue at this precision");

    long mlo = std::max(range.m_minus, e.lo());
    long mhi = std::min(range.m_plus, -w.lo() - 2);
    int prec = std::min(e.prec(), w.prec());
    long vmax = 0;
    for (long m = mlo; m <= mhi; ++m)
        if (m != -1) vmax = std::max(vmax, vp_of(p, m + 1));

    ZqElement acc = ctx->zero(prec);
    const mpz_class& pk = ctx->pow_p(prec);
    for (long m = mlo; m <= mhi; ++m) {
        if (m == -1) continue;
        if (m >= e.hi())
            throw_precision("PlanViolation", "eta expansion too short for the plan");
        if (-m - 2 >= w.hi())
            throw_precision("PlanViolation", "omega expansion too short for the plan");
        auto t = zq_mul(e.coeff(m), w.coeff(-m - 2));
        if (t.is_zero()) continue;
        long v;
        mpz_class u;
        bool neg;
        split_divisor(p, m + 1, v, u, neg);
        mpz_class uinv;
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
        mpz_class factor = uinv;
        for (long k = 0; k < vmax - v; ++k) factor *= p;
        if (neg) factor = -factor;
        std::vector<mpz_class> cc(t.coeffs());
        for (auto& x : cc) x *= factor;
        acc = zq_add(acc, ctx->from_coeffs(cc, prec));
    }
    return {acc, vmax};
}

ZqElement ls_res_pair(const LaurentSeries& w, const LaurentSeries& e,
                      const ResiduePairRange& range) {
    auto [acc, vmax] = ls_res_pair_scaled(w, e, range);
    int prec = acc.prec() - int(vmax);
    if (prec < range.target_prec)
        throw_precision("PlanViolation", "residue pairing falls short of the target precision");
    const auto& ctx = acc.ctx();
    mpz_class pv = ctx->pow_p(int(vmax));
    std::vector<mpz_class> cc(acc.coeffs());
    for (auto& x : cc) {
        if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
            throw_precision("PlanViolation", "residue pairing is not integral");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
    }
    return ctx->from_coeffs(cc, prec).truncated(range.target_prec);
}

LaurentSeries ls_sqrt(const LaurentSeries& a0) {
    const auto& ctx = a0.ctx();
    if (ctx->p() == 2) throw_validation("BadLeadingTerm", "square root requires p != 2");
    LaurentSeries a = a0.normalized_lo();
    if (a.lo() != 0 || !(a.coeff(0) == ctx->one(a.prec())))
        throw_validation("BadLeadingTerm", "square root requires constant term 1 at t^0");
    int prec = a.prec();
    long n = a.hi();
    ZqElement half = zq_inv(ctx->from_int(2, prec));
    std::vector<ZqElement> s(size_t(n), ctx->zero(prec));
    s[0] = ctx->one(prec);
    for (long m = 1; m < n; ++m) {
        ZqElement conv = ctx->zero(prec);
        for (long i = 1; i < m; ++i) conv = zq_add(conv, zq_mul(s[size_t(i)], s[size_t(m - i)]));
        s[size_t(m)] = zq_mul(half, zq_sub(a.coeff(m), conv));
    }
    return LaurentSeries::from_coeffs(ctx, 0, s, prec);
}

bool ls_profile_check(const LaurentSeries& s, const BoundProfile& pb) {
    for (long m = s.lo(); m < s.hi(); ++m) {
        mpq_class bound = -pb.alpha * m + pb.beta;
        long need = ceil_q_long(bound);
        if (need > s.prec()) continue;  // vacuous beyond the precision
        if (need <= 0) continue;
        auto v = zq_valuation(s.coeff(m));
        if (v.at_least) continue;
        if (v.v < need) return false;
    }
    return true;
}

} // namespace zetalift
