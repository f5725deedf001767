#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "zetalift/errors.hpp"

namespace zetalift {

class ZqElement;

/// Arithmetic context for Z_q = Z_p[g]/(m(g)), the unramified extension of
/// Z_p of degree l, with all values kept modulo p^N_work.  The Frobenius
/// automorphism sigma is stored through the image of the generator g.
///
/// Immutable after construction; share freely between threads.
class PrecisionContext : public std::enable_shared_from_this<PrecisionContext> {
public:
    /// modulus: coefficients c0..cl of a monic degree-l polynomial, irreducible
    /// mod p.  Pass an empty vector to search for the smallest one.
    static std::shared_ptr<const PrecisionContext> make(long p, int l, int n_work,
                                                        std::vector<mpz_class> modulus = {});

    long p() const { return p_; }
    int degree() const { return l_; }
    int n_work() const { return n_work_; }
    const mpz_class& p_mpz() const { return p_mpz_; }

    /// p^k for 0 <= k <= n_work.
    const mpz_class& pow_p(int k) const;
    const std::vector<mpz_class>& modulus() const { return modulus_; }

    ZqElement zero(int prec = -1) const;
    ZqElement one(int prec = -1) const;
    ZqElement from_int(const mpz_class& v, int prec = -1) const;
    /// a/b with b a p-adic unit.
    ZqElement from_rational(const mpq_class& v, int prec = -1) const;
    /// Element c0 + c1 g + ... of Z_q.
    ZqElement from_coeffs(std::vector<mpz_class> coeffs, int prec = -1) const;
    /// The generator g itself (zero in the degree-1 case, where m(g) = g).
    ZqElement generator(int prec = -1) const;

    /// sigma(g), precomputed to full working precision.
    const ZqElement& sigma_image() const { return *sigma_image_; }

    friend class ZqElement;
    friend ZqElement zq_mul(const ZqElement&, const ZqElement&);
    friend ZqElement zq_sigma(const ZqElement&, int);

    // Internal: raw coefficient kernels used by the Laurent layer.
    void raw_mul(mpz_class* out2l, const mpz_class* a, const mpz_class* b) const;
    void raw_reduce(mpz_class* coeffs2l, mpz_class* out, const mpz_class& pk) const;

private:
    PrecisionContext() = default;

    long p_ = 0;
    mpz_class p_mpz_;
    int l_ = 1;
    int n_work_ = 1;
    std::vector<mpz_class> modulus_;     // c0..cl, monic
    std::vector<mpz_class> pow_p_;       // p^0..p^n_work
    std::shared_ptr<ZqElement> sigma_image_;
    // sigma as a matrix on coefficient vectors: column j = sigma(g^j).
    std::vector<std::vector<mpz_class>> sigma_matrix_;
};

using CtxPtr = std::shared_ptr<const PrecisionContext>;

/// Valuation of an element known modulo p^prec: either an exact value or the
/// symbolic statement "at least prec".
struct Valuation {
    long v = 0;
    bool at_least = false;  // true: the element is 0 mod p^v, nothing more is known

    bool known_ge(long bound) const { return v >= bound; }
    bool operator==(const Valuation&) const = default;
};

/// Element of Z_q known modulo p^prec.  Coefficients of 1, g, ..., g^{l-1},
/// each reduced into [0, p^prec).
class ZqElement {
public:
    ZqElement() = default;

    const CtxPtr& ctx() const { return ctx_; }
    int prec() const { return prec_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const;
    /// True iff the constant coefficient carries the whole element.
    bool is_constant() const;
    /// Constant coefficient (requires is_constant()).
    const mpz_class& constant() const;

    ZqElement truncated(int prec) const;

    bool operator==(const ZqElement& o) const { return prec_ == o.prec_ && c_ == o.c_; }
    std::string str() const;

    friend class PrecisionContext;
    friend ZqElement zq_add(const ZqElement&, const ZqElement&);
    friend ZqElement zq_sub(const ZqElement&, const ZqElement&);
    friend ZqElement zq_neg(const ZqElement&);
    friend ZqElement zq_mul(const ZqElement&, const ZqElement&);
    friend ZqElement zq_inv(const ZqElement&);
    friend ZqElement zq_sigma(const ZqElement&, int);
    friend Valuation zq_valuation(const ZqElement&);
    friend class LaurentSeries;

private:
    ZqElement(CtxPtr ctx, int prec) : ctx_(std::move(ctx)), prec_(prec) {
        c_.resize(ctx_->degree());
    }

    CtxPtr ctx_;
    int prec_ = 0;
    std::vector<mpz_class> c_;
};

ZqElement zq_add(const ZqElement& a, const ZqElement& b);
ZqElement zq_sub(const ZqElement& a, const ZqElement& b);
ZqElement zq_neg(const ZqElement& a);
ZqElement zq_mul(const ZqElement& a, const ZqElement& b);
/// Inverse of a unit; throws NonUnit otherwise.
ZqElement zq_inv(const ZqElement& a);
/// k-fold application of the Frobenius automorphism.
ZqElement zq_sigma(const ZqElement& a, int k = 1);
Valuation zq_valuation(const ZqElement& a);

inline ZqElement operator+(const ZqElement& a, const ZqElement& b) { return zq_add(a, b); }
inline ZqElement operator-(const ZqElement& a, const ZqElement& b) { return zq_sub(a, b); }
inline ZqElement operator-(const ZqElement& a) { return zq_neg(a); }
inline ZqElement operator*(const ZqElement& a, const ZqElement& b) { return zq_mul(a, b); }

// F_p[x] utility kernel shared by the modulus search and the curve builders.
// Polynomials are coefficient vectors (ascending), entries in [0, p).
namespace fp {
std::vector<long> trim(std::vector<long> a);
std::vector<long> mul(const std::vector<long>& a, const std::vector<long>& b, long p);
std::vector<long> mod(std::vector<long> a, const std::vector<long>& m, long p);
std::vector<long> gcd(std::vector<long> a, std::vector<long> b, long p);
long inv_mod(long a, long p);
bool irreducible(const std::vector<long>& m, long p);
/// Smallest (lexicographic in c0, c1, ... read as a base-p integer) monic
/// irreducible polynomial of degree l over F_p.
std::vector<long> find_irreducible(long p, int l);
} // namespace fp

} // namespace zetalift
