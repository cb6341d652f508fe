#pragma once

#include <cstdint>
#include <vector>

#include "cyclo/bigint.hpp"

namespace cyclo {

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// a^e mod m for m < 2^62, via 128-bit intermediate products.
std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

/// Inverse of a mod m; throws invalid_argument when gcd(a, m) != 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::int64_t n);

/// Primes up to and including n, by sieve.
std::vector<std::int64_t> primes_upto(std::int64_t n);

/// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// All divisors of n, ascending.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Product of all primes <= k (the primorial), exact.
BigInt primorial(std::int64_t k);

/// Primorial as int64; throws budget_exceeded if it does not fit.
std::int64_t primorial64(std::int64_t k);

/// Chebyshev theta: sum of ln p over primes p <= k.
double chebyshev_theta(std::int64_t k);

/// Smallest primitive root mod an odd prime p.
std::int64_t primitive_root(std::int64_t p);

/// Unique x mod prod(moduli) with x = residues[i] mod moduli[i].
/// Moduli must be pairwise coprime and residues must be units; throws
/// invalid_argument otherwise. The result is a unit mod the product.
std::int64_t crt_lift(const std::vector<std::int64_t>& moduli,
                      const std::vector<std::int64_t>& residues);

} // namespace cyclo
