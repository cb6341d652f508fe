#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace cyclo {

/// Arbitrary-precision integer. Coefficient vectors of reduced cyclotomic
/// elements can outgrow machine words for composite moduli, so the public
/// types never assume word-sized coefficients.
using BigInt = mpz_class;

inline bool fits_int64(const BigInt& v) {
    return v.fits_slong_p();
}

/// Natural log of a positive BigInt, accurate to double precision.
inline double log_bigint(const BigInt& v) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

} // namespace cyclo
