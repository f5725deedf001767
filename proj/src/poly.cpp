#include "zetalift/poly.hpp"

#include <algorithm>
#include <sstream>

namespace zetalift {

MultiPoly MultiPoly::constant(int nvars, const ZqElement& c) {
    MultiPoly r(nvars);
    r.add_term(Exps(size_t(nvars), 0), c);
    return r;
}

MultiPoly MultiPoly::variable(int nvars, int i, const CtxPtr& ctx, int prec) {
    MultiPoly r(nvars);
    Exps e(size_t(nvars), 0);
    e[size_t(i)] = 1;
    r.add_term(e, ctx->one(prec));
    return r;
}

MultiPoly MultiPoly::monomial(int nvars, Exps e, const ZqElement& c) {
    MultiPoly r(nvars);
    r.add_term(e, c);
    return r;
}

long MultiPoly::total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[size_t(var)]);
    return d;
}

void MultiPoly::add_term(const Exps& e, const ZqElement& c) {
    if (int(e.size()) != nvars_) throw_validation("BadDegree", "exponent vector length");
    for (int x : e)
        if (x < 0) throw_validation("BadDegree", "negative exponent in polynomial");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
        return;
    }
    auto s = zq_add(it->second, c);
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

MultiPoly MultiPoly::truncated_prec(int prec) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.truncated(prec));
    return r;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

static void check_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) throw_validation("BadDegree", "variable count mismatch");
}

MultiPoly mp_add(const MultiPoly& a, const MultiPoly& b) {
    check_vars(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}

MultiPoly mp_sub(const MultiPoly& a, const MultiPoly& b) { return mp_add(a, mp_neg(b)); }

MultiPoly mp_neg(const MultiPoly& a) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) r.add_term(e, zq_neg(c));
    return r;
}

MultiPoly mp_mul(const MultiPoly& a, const MultiPoly& b) {
    check_vars(a, b);
    MultiPoly r(a.nvars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            MultiPoly::Exps e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, zq_mul(ca, cb));
        }
    }
    return r;
}

MultiPoly mp_scale(const ZqElement& c, const MultiPoly& a) {
    MultiPoly r(a.nvars());
    for (const auto& [e, x] : a.terms()) r.add_term(e, zq_mul(c, x));
    return r;
}

MultiPoly mp_pow(const MultiPoly& a, long k) {
    if (k < 0) throw_validation("BadDegree", "negative power");
    if (k == 0) throw_validation("BadDegree", "use MultiPoly::constant for the zeroth power");
    MultiPoly r(a.nvars());
    MultiPoly base = a;
    bool started = false;
    while (k > 0) {
        if (k & 1) {
            r = started ? mp_mul(r, base) : base;
            started = true;
        }
        k >>= 1;
        if (k) base = mp_mul(base, base);
    }
    return r;
}

MultiPoly mp_derivative(const MultiPoly& a, int i) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) {
        if (e[size_t(i)] == 0) continue;
        MultiPoly::Exps d(e);
        int k = d[size_t(i)]--;
        r.add_term(d, zq_mul(c.ctx()->from_int(k, c.prec()), c));
    }
    return r;
}

MultiPoly mp_sigma(const MultiPoly& a) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) r.add_term(e, zq_sigma(c));
    return r;
}

MultiPoly mp_psi(const MultiPoly& a) {
    MultiPoly r(a.nvars());
    for (const auto& [e, c] : a.terms()) {
        MultiPoly::Exps pe(e);
        long p = c.ctx()->p();
        for (auto& x : pe) {
            long v = x * p;
            if (v > (1 << 28)) throw_validation("BadDegree", "psi exponent overflow");
            x = int(v);
        }
        r.add_term(pe, zq_sigma(c));
    }
    return r;
}

LaurentSeries mp_eval_series(const MultiPoly& f, const std::vector<LaurentSeries>& args,
                             EvalCap cap) {
    if (int(args.size()) != f.nvars())
        throw_validation("BadDegree", "argument count does not match nvars");
    if (args.empty()) throw_validation("BadDegree", "no arguments");
    const auto& ctx = args[0].ctx();
    int prec = ctx->n_work();
    for (const auto& a : args) prec = std::min(prec, a.prec());

    // window on which exactly-known constants are carried
    long const_hi;
    if (cap.capped) {
        const_hi = cap.hi;
    } else {
        const_hi = 1;
        for (const auto& a : args) const_hi = std::max(const_hi, a.hi());
        long worst = 0;
        for (const auto& a : args) worst = std::max(worst, std::max(-a.lo(), 0L));
        const_hi += worst * std::max(1L, f.total_degree()) + 8;
    }

    auto mul2 = [&](const LaurentSeries& x, const LaurentSeries& y) {
        return cap.capped ? ls_mul_capped(x, y, cap.lo, cap.hi) : ls_mul(x, y);
    };

    std::vector<std::vector<LaurentSeries>> pows(args.size());
    LaurentSeries one = LaurentSeries::monomial(ctx->one(prec), 0, const_hi);
    for (size_t i = 0; i < args.size(); ++i) pows[i].push_back(one);
    auto power = [&](size_t i, int k) -> const LaurentSeries& {
        auto& cache = pows[i];
        while (int(cache.size()) <= k) cache.push_back(mul2(cache.back(), args[i]));
        return cache[size_t(k)];
    };

    LaurentSeries acc(ctx, cap.capped ? std::min(cap.lo, const_hi - 1) : 0, const_hi, prec);
    bool have = false;
    for (const auto& [e, c] : f.terms()) {
        LaurentSeries term = LaurentSeries::monomial(c, 0, const_hi);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = mul2(term, power(i, e[i]));
        acc = have ? ls_add(acc, term) : term;
        have = true;
    }
    if (!have) return LaurentSeries(ctx, cap.capped ? std::min(cap.lo, const_hi - 1) : 0, const_hi, prec);
    return acc;
}

ZqElement mp_eval(const MultiPoly& f, const std::vector<ZqElement>& args) {
    if (int(args.size()) != f.nvars())
        throw_validation("BadDegree", "argument count does not match nvars");
    if (args.empty()) throw_validation("BadDegree", "no arguments");
    const auto& ctx = args[0].ctx();
    int prec = ctx->n_work();
    for (const auto& a : args) prec = std::min(prec, a.prec());
    ZqElement acc = ctx->zero(prec);
    for (const auto& [e, c] : f.terms()) {
        ZqElement term = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) term = zq_mul(term, args[i]);
        acc = zq_add(acc, term);
    }
    return acc;
}

std::vector<std::vector<MultiPoly>> mp_jacobian(const std::vector<MultiPoly>& fs) {
    std::vector<std::vector<MultiPoly>> rows;
    for (const auto& f : fs) {
        std::vector<MultiPoly> row;
        for (int i = 0; i < f.nvars(); ++i) row.push_back(mp_derivative(f, i));
        rows.push_back(std::move(row));
    }
    return rows;
}

mpq_class PolytopeBounds::cost(const std::vector<int>& I) const {
    if (dvecs.empty()) throw_validation("BadDegree", "empty polytope bound family");
    mpq_class best = 0;
    bool first = true;
    for (const auto& D : dvecs) {
        if (D.size() != I.size()) throw_validation("BadDegree", "bound vector length");
        mpq_class s = 0;
        for (size_t i = 0; i < D.size(); ++i) s += D[i] * I[i];
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

void PolytopeBounds::validate(const std::vector<MultiPoly>& fs) const {
    for (const auto& f : fs)
        for (const auto& [e, c] : f.terms())
            if (cost(e) > 1)
                throw_validation("BadDegree",
                                 "polytope bound vector does not contain a defining exponent");
}

} // namespace zetalift
