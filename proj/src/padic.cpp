#include "zetalift/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zetalift {

namespace fp {

std::vector<long> trim(std::vector<long> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<long> mul(const std::vector<long>& a, const std::vector<long>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return trim(std::move(r));
}

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw_validation("NonUnit", "no inverse mod p");
    return ((t % p) + p) % p;
}

std::vector<long> mod(std::vector<long> a, const std::vector<long>& m, long p) {
    a = trim(std::move(a));
    const auto mm = trim(m);
    if (mm.empty()) throw_validation("NonUnit", "division by zero polynomial");
    long lead_inv = inv_mod(mm.back(), p);
    while (a.size() >= mm.size()) {
        long c = (a.back() * lead_inv) % p;
        size_t off = a.size() - mm.size();
        for (size_t i = 0; i < mm.size(); ++i)
            a[off + i] = ((a[off + i] - c * mm[i]) % p + p) % p;
        a = trim(std::move(a));
    }
    return a;
}

std::vector<long> gcd(std::vector<long> a, std::vector<long> b, long p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long c = inv_mod(a.back(), p);
        for (auto& x : a) x = (x * c) % p;
    }
    return a;
}

// Extended Euclid: returns u with u*a == gcd(a,m) mod m; empty if a == 0 mod m.
static std::vector<long> xgcd_inv(std::vector<long> a, const std::vector<long>& m, long p) {
    a = mod(std::move(a), m, p);
    if (a.empty()) return {};
    std::vector<long> r0 = trim(m), r1 = a;
    std::vector<long> s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<long> q;
        std::vector<long> rem = r0;
        long lead_inv = inv_mod(r1.back(), p);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                long c = (rem.back() * lead_inv) % p;
                size_t off = rem.size() - r1.size();
                q[off] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[off + i] = ((rem[off + i] - c * r1[i]) % p + p) % p;
                rem = trim(std::move(rem));
            }
        }
        // s = s0 - q*s1
        auto qs = mul(trim(q), s1, p);
        std::vector<long> s(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s.size(); ++i) {
            long v = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
            s[i] = ((v % p) + p) % p;
        }
        s = trim(std::move(s));
        r0 = std::move(r1); r1 = std::move(rem);
        s0 = std::move(s1); s1 = std::move(s);
    }
    if (r0.size() != 1) return {};  // gcd not a unit
    long c = inv_mod(r0[0], p);
    for (auto& x : s0) x = (x * c) % p;
    return mod(std::move(s0), m, p);
}

bool irreducible(const std::vector<long>& m, long p) {
    auto mm = trim(m);
    if (mm.size() < 2) return false;
    int l = int(mm.size()) - 1;
    if (l == 1) return true;
    // brute-force factor search: no monic divisor of degree 1..l/2
    std::vector<long> f(l / 2 + 2, 0);
    for (int d = 1; d <= l / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long v = 0; v < count; ++v) {
            std::vector<long> cand(d + 1, 0);
            long t = v;
            for (int i = 0; i < d; ++i) { cand[i] = t % p; t /= p; }
            cand[d] = 1;
            if (mod(mm, cand, p).empty()) return false;
        }
    }
    return true;
}

std::vector<long> find_irreducible(long p, int l) {
    if (l == 1) return {0, 1};  // m(g) = g
    long count = 1;
    for (int i = 0; i < l; ++i) count *= p;
    for (long v = 0; v < count; ++v) {
        std::vector<long> m(l + 1, 0);
        long t = v;
        for (int i = 0; i < l; ++i) { m[i] = t % p; t /= p; }
        m[l] = 1;
        if (irreducible(m, p)) return m;
    }
    throw_validation("NonUnit", "no irreducible polynomial found");  // unreachable
}

} // namespace fp

static bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::shared_ptr<const PrecisionContext> PrecisionContext::make(long p, int l, int n_work,
                                                               std::vector<mpz_class> modulus) {
    if (!is_prime_long(p)) throw_validation("NotPrime", "p = " + std::to_string(p));
    if (l < 1) throw_validation("BadDegree", "l must be >= 1");
    if (n_work < 1) throw_validation("BadPrecision", "N_work must be >= 1");

    auto ctx = std::shared_ptr<PrecisionContext>(new PrecisionContext());
    ctx->p_ = p;
    ctx->p_mpz_ = p;
    ctx->l_ = l;
    ctx->n_work_ = n_work;

    ctx->pow_p_.resize(n_work + 1);
    ctx->pow_p_[0] = 1;
    for (int k = 1; k <= n_work; ++k) ctx->pow_p_[k] = ctx->pow_p_[k - 1] * p;

    if (modulus.empty()) {
        auto m = fp::find_irreducible(p, l);
        modulus.assign(m.begin(), m.end());
    }
    if (int(modulus.size()) != l + 1 || modulus[l] != 1)
        throw_validation("BadModulus", "modulus must be monic of degree l");
    std::vector<long> mbar(l + 1);
    for (int i = 0; i <= l; ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), modulus[i].get_mpz_t(), ctx->p_mpz_.get_mpz_t());
        mbar[i] = r.get_si();
    }
    if (l > 1 && !fp::irreducible(mbar, p))
        throw_validation("BadModulus", "modulus is reducible mod p");
    ctx->modulus_ = std::move(modulus);

    // sigma(g): the root of m congruent to g^p mod p, by Newton iteration.
    ZqElement x(ctx, n_work);
    if (l == 1) {
        // Z_p itself; sigma is the identity.
        mpz_class c0 = -ctx->modulus_[0];
        mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), ctx->pow_p(n_work).get_mpz_t());
        x.c_[0] = c0;
    } else {
        // start from g^p mod p
        ZqElement g(ctx, n_work);
        g.c_[1] = 1;
        ZqElement acc = ctx->one(n_work);
        long e = p;
        ZqElement base = g;
        while (e > 0) {
            if (e & 1) acc = zq_mul(acc, base);
            base = zq_mul(base, base);
            e >>= 1;
        }
        // reduce mod p, keep representative
        for (auto& c : acc.c_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), ctx->p_mpz_.get_mpz_t());
        x = acc;
        auto eval = [&](const ZqElement& z, bool deriv) {
            ZqElement r = ctx->zero(n_work);
            if (!deriv) {
                for (int i = l; i >= 0; --i) {
                    r = zq_mul(r, z);
                    r = zq_add(r, ctx->from_int(ctx->modulus_[i], n_work));
                }
            } else {
                for (int i = l; i >= 1; --i) {
                    r = zq_mul(r, z);
                    r = zq_add(r, ctx->from_int(i * ctx->modulus_[i], n_work));
                }
            }
            return r;
        };
        int steps = 1;
        while ((1 << steps) < n_work) ++steps;
        for (int it = 0; it <= steps + 1; ++it) {
            ZqElement mv = eval(x, false);
            if (mv.is_zero()) break;
            x = zq_sub(x, zq_mul(mv, zq_inv(eval(x, true))));
        }
        if (!eval(x, false).is_zero())
            throw_validation("BadModulus", "sigma image did not converge");
    }
    ctx->sigma_image_ = std::make_shared<ZqElement>(x);

    // matrix columns sigma(g^j) = x^j
    ctx->sigma_matrix_.resize(l);
    ZqElement xp = ctx->one(n_work);
    for (int j = 0; j < l; ++j) {
        ctx->sigma_matrix_[j] = xp.c_;
        if (j + 1 < l) xp = zq_mul(xp, x);
    }
    return ctx;
}

const mpz_class& PrecisionContext::pow_p(int k) const {
    return pow_p_.at(size_t(k));
}

ZqElement PrecisionContext::zero(int prec) const {
    if (prec < 0) prec = n_work_;
    return ZqElement(shared_from_this(), prec);
}

ZqElement PrecisionContext::one(int prec) const {
    auto r = zero(prec);
    r.c_[0] = 1;
    return r;
}

ZqElement PrecisionContext::from_int(const mpz_class& v, int prec) const {
    auto r = zero(prec);
    mpz_fdiv_r(r.c_[0].get_mpz_t(), v.get_mpz_t(), pow_p(r.prec_).get_mpz_t());
    return r;
}

ZqElement PrecisionContext::from_rational(const mpq_class& v, int prec) const {
    auto num = from_int(v.get_num(), prec);
    if (v.get_den() == 1) return num;
    return zq_mul(num, zq_inv(from_int(v.get_den(), prec)));
}

ZqElement PrecisionContext::from_coeffs(std::vector<mpz_class> coeffs, int prec) const {
    auto r = zero(prec);
    if (coeffs.size() > size_t(l_))
        throw_validation("BadDegree", "too many coefficients for Z_q element");
    for (size_t i = 0; i < coeffs.size(); ++i)
        mpz_fdiv_r(r.c_[i].get_mpz_t(), coeffs[i].get_mpz_t(), pow_p(r.prec_).get_mpz_t());
    return r;
}

ZqElement PrecisionContext::generator(int prec) const {
    auto r = zero(prec);
    if (l_ > 1) r.c_[1] = 1;
    return r;
}

void PrecisionContext::raw_mul(mpz_class* out2l, const mpz_class* a, const mpz_class* b) const {
    for (int k = 0; k < 2 * l_ - 1; ++k) out2l[k] = 0;
    for (int i = 0; i < l_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < l_; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out2l[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
}

void PrecisionContext::raw_reduce(mpz_class* c, mpz_class* out, const mpz_class& pk) const {
    for (int k = 2 * l_ - 2; k >= l_; --k) {
        if (c[k] == 0) continue;
        for (int i = 0; i < l_; ++i)
            mpz_submul(c[k - l_ + i].get_mpz_t(), c[k].get_mpz_t(), modulus_[i].get_mpz_t());
        c[k] = 0;
    }
    for (int i = 0; i < l_; ++i)
        mpz_fdiv_r(out[i].get_mpz_t(), c[i].get_mpz_t(), pk.get_mpz_t());
}

bool ZqElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool ZqElement::is_constant() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

const mpz_class& ZqElement::constant() const {
    if (!is_constant()) throw_validation("NotGaloisInvariant", "element is not in Z_p");
    return c_[0];
}

ZqElement ZqElement::truncated(int prec) const {
    if (prec >= prec_) return *this;
    if (prec < 0) throw_validation("BadPrecision", "negative precision");
    ZqElement r(ctx_, prec);
    for (size_t i = 0; i < c_.size(); ++i)
        mpz_fdiv_r(r.c_[i].get_mpz_t(), c_[i].get_mpz_t(), ctx_->pow_p(prec).get_mpz_t());
    return r;
}

std::string ZqElement::str() const {
    std::ostringstream os;
    if (is_constant()) {
        os << c_[0];
        return os.str();
    }
    os << "(";
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        os << c_[i];
        if (i == 1) os << "*g";
        if (i > 1) os << "*g^" << i;
        first = false;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

static void check_same_ctx(const ZqElement& a, const ZqElement& b) {
    if (a.ctx() != b.ctx())
        throw_validation("ContextMismatch", "operands built over different contexts");
}

ZqElement zq_add(const ZqElement& a, const ZqElement& b) {
    check_same_ctx(a, b);
    int prec = std::min(a.prec_, b.prec_);
    ZqElement r(a.ctx_, prec);
    const mpz_class& pk = a.ctx_->pow_p(prec);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = a.c_[i] + b.c_[i];
        mpz_fdiv_r(r.c_[i].get_mpz_t(), r.c_[i].get_mpz_t(), pk.get_mpz_t());
    }
    return r;
}

ZqElement zq_sub(const ZqElement& a, const ZqElement& b) {
    check_same_ctx(a, b);
    int prec = std::min(a.prec_, b.prec_);
    ZqElement r(a.ctx_, prec);
    const mpz_class& pk = a.ctx_->pow_p(prec);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = a.c_[i] - b.c_[i];
        mpz_fdiv_r(r.c_[i].get_mpz_t(), r.c_[i].get_mpz_t(), pk.get_mpz_t());
    }
    return r;
}

ZqElement zq_neg(const ZqElement& a) {
    ZqElement r(a.ctx_, a.prec_);
    const mpz_class& pk = a.ctx_->pow_p(a.prec_);
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] = -a.c_[i];
        mpz_fdiv_r(r.c_[i].get_mpz_t(), r.c_[i].get_mpz_t(), pk.get_mpz_t());
    }
    return r;
}

ZqElement zq_mul(const ZqElement& a, const ZqElement& b) {
    check_same_ctx(a, b);
    int prec = std::min(a.prec_, b.prec_);
    int l = a.ctx_->degree();
    ZqElement r(a.ctx_, prec);
    if (l == 1) {
        r.c_[0] = a.c_[0] * b.c_[0];
        mpz_fdiv_r(r.c_[0].get_mpz_t(), r.c_[0].get_mpz_t(), a.ctx_->pow_p(prec).get_mpz_t());
        return r;
    }
    std::vector<mpz_class> tmp(2 * l - 1);
    a.ctx_->raw_mul(tmp.data(), a.c_.data(), b.c_.data());
    a.ctx_->raw_reduce(tmp.data(), r.c_.data(), a.ctx_->pow_p(prec));
    return r;
}

ZqElement zq_inv(const ZqElement& a) {
    const auto& ctx = a.ctx_;
    long p = ctx->p();
    int l = ctx->degree();
    int prec = a.prec_;
    // inverse mod p via extended Euclid over F_p[x]
    std::vector<long> abar(l);
    bool zero = true;
    for (int i = 0; i < l; ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.c_[i].get_mpz_t(), ctx->p_mpz().get_mpz_t());
        abar[i] = r.get_si();
        if (abar[i] != 0) zero = false;
    }
    if (zero) throw_validation("NonUnit", "element has positive valuation");
    std::vector<long> mbar(l + 1);
    for (int i = 0; i <= l; ++i) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), ctx->modulus()[i].get_mpz_t(), ctx->p_mpz().get_mpz_t());
        mbar[i] = r.get_si();
    }
    std::vector<long> binv;
    if (l == 1) {
        binv = {fp::inv_mod(abar[0], p)};
    } else {
        binv = fp::xgcd_inv(abar, mbar, p);
        if (binv.empty()) throw_validation("NonUnit", "element not invertible mod p");
    }
    ZqElement b(ctx, prec);
    for (size_t i = 0; i < binv.size(); ++i) b.c_[i] = binv[i];
    // Newton lifting b <- b(2 - ab), doubling the p-adic accuracy each step
    ZqElement two = ctx->from_int(2, prec);
    int steps = 0;
    while ((1 << steps) < prec) ++steps;
    for (int it = 0; it < steps; ++it)
        b = zq_mul(b, zq_sub(two, zq_mul(a, b)));
    return b;
}

ZqElement zq_sigma(const ZqElement& a, int k) {
    const auto& ctx = a.ctx_;
    int l = ctx->degree();
    if (l == 1 || k % l == 0) return a;
    k = ((k % l) + l) % l;
    ZqElement r = a;
    const mpz_class& pk = ctx->pow_p(a.prec_);
    for (int it = 0; it < k; ++it) {
        ZqElement s(ctx, r.prec_);
        for (int j = 0; j < l; ++j) {
            if (r.c_[j] == 0) continue;
            for (int i = 0; i < l; ++i)
                mpz_addmul(s.c_[i].get_mpz_t(), r.c_[j].get_mpz_t(),
                           ctx->sigma_matrix_[j][i].get_mpz_t());
        }
        for (int i = 0; i < l; ++i)
            mpz_fdiv_r(s.c_[i].get_mpz_t(), s.c_[i].get_mpz_t(), pk.get_mpz_t());
        r = std::move(s);
    }
    return r;
}

Valuation zq_valuation(const ZqElement& a) {
    long best = a.prec_;
    bool any = false;
    for (const auto& c : a.c_) {
        if (c == 0) continue;
        any = true;
        mpz_class t = c;
        long v = 0;
        while (v < best && mpz_divisible_p(t.get_mpz_t(), a.ctx_->p_mpz().get_mpz_t())) {
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), a.ctx_->p_mpz().get_mpz_t());
            ++v;
        }
        best = std::min(best, v);
    }
    if (!any) return Valuation{a.prec_, true};
    return Valuation{best, false};
}

} // namespace zetalift
