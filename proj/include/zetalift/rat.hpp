#pragma once

#include <gmpxx.h>

namespace zetalift {

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline long floor_q_long(const mpq_class& q) { return floor_q(q).get_si(); }
inline long ceil_q_long(const mpq_class& q) { return ceil_q(q).get_si(); }

/// p-adic valuation of a nonzero integer.
inline long vp_of(long p, long n) {
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

} // namespace zetalift
