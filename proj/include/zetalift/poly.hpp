#pragma once

#include <map>
#include <string>
#include <vector>

#include "zetalift/laurent.hpp"

namespace zetalift {

/// Sparse multivariate polynomial over Z_q.  Exponent vectors have length
/// nvars; stored coefficients are nonzero mod p^prec.
class MultiPoly {
public:
    using Exps = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const ZqElement& c);
    static MultiPoly variable(int nvars, int i, const CtxPtr& ctx, int prec = -1);
    static MultiPoly monomial(int nvars, Exps e, const ZqElement& c);

    int nvars() const { return nvars_; }
    const std::map<Exps, ZqElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long total_degree() const;
    int degree_in(int var) const;

    void add_term(const Exps& e, const ZqElement& c);
    MultiPoly truncated_prec(int prec) const;
    std::string str(const std::vector<std::string>& names) const;

    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

private:
    int nvars_ = 0;
    std::map<Exps, ZqElement> terms_;
};

MultiPoly mp_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_sub(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_neg(const MultiPoly& a);
MultiPoly mp_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_scale(const ZqElement& c, const MultiPoly& a);
MultiPoly mp_pow(const MultiPoly& a, long k);
/// Partial derivative with respect to variable i.
MultiPoly mp_derivative(const MultiPoly& a, int i);
/// Apply sigma to every coefficient.
MultiPoly mp_sigma(const MultiPoly& a);
/// psi: x_i -> x_i^p on exponents, sigma on coefficients.
MultiPoly mp_psi(const MultiPoly& a);

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return mp_add(a, b); }
inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return mp_sub(a, b); }
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mp_mul(a, b); }

/// Evaluate at Laurent-series arguments with exact window tracking.
/// A positive cap pair switches every product to the capped quotient ring.
struct EvalCap {
    bool capped = false;
    long lo = 0, hi = 0;
};
LaurentSeries mp_eval_series(const MultiPoly& f, const std::vector<LaurentSeries>& args,
                             EvalCap cap = {});

/// Evaluate at Z_q points.
ZqElement mp_eval(const MultiPoly& f, const std::vector<ZqElement>& args);

/// Jacobian matrix (df_j / dx_i), row per polynomial.
std::vector<std::vector<MultiPoly>> mp_jacobian(const std::vector<MultiPoly>& fs);

/// Finite family of polytope bound vectors D with D . v <= 1 for every
/// exponent v of every defining polynomial; Gamma is their intersection.
struct PolytopeBounds {
    std::vector<std::vector<mpq_class>> dvecs;

    /// max_D D.I: the smallest c with I in c*Gamma for this finite model.
    mpq_class cost(const std::vector<int>& I) const;
    /// Check D.v <= 1 against the exponents of the given polynomials.
    void validate(const std::vector<MultiPoly>& fs) const;
};

inline mpq_class pb_cost(const PolytopeBounds& pb, const std::vector<int>& I) {
    return pb.cost(I);
}

} // namespace zetalift
