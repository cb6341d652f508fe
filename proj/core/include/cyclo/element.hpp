#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cyclo/bigint.hpp"
#include "cyclo/polynomial.hpp"
#include "cyclo/root.hpp"

namespace cyclo {

/// Q_{2m} = Q_m for odd m, so moduli are normalized to be 1 or != 2 mod 4.
/// This makes N -> Q_N injective and conductor search a divisor walk.
std::int64_t normalize_modulus(std::int64_t n);

/// Canonical lowest-terms root (free-function spelling of RootOfUnity::make).
RootOfUnity make_root(std::int64_t n, std::int64_t e);

/// Shared per-modulus context for Z[zeta_N], N normalized.
///
/// Elements are stored on the power basis {zeta_N^i : 0 <= i < phi(N)} of
/// Z[x]/Phi_N(x). The ring precomputes, for every exponent k in [phi, N),
/// the power-basis coordinates of zeta_N^k ("rows"), so reducing any
/// exponent-indexed accumulation is a table walk. Row entries are small
/// integers; their int64 range is verified at construction time.
class CyclotomicRing {
public:
    /// Fetch (or build) the context for normalize_modulus(n). Contexts are
    /// cached process-wide with an LRU byte budget; thread-safe.
    static std::shared_ptr<const CyclotomicRing> get(std::int64_t n);

    std::int64_t modulus() const { return n_; }
    std::int64_t phi() const { return phi_; }

    /// Largest |entry| over all reduction rows (at least 1).
    std::int64_t max_row_magnitude() const { return max_row_; }

    /// Power-basis coordinates of zeta_N^k, as a row of length phi().
    /// Only valid for k in [phi, N); exponents below phi are basis vectors.
    std::span<const std::int64_t> row(std::int64_t k) const {
        return {rows_.data() + (k - phi_) * phi_, static_cast<std::size_t>(phi_)};
    }

    /// acc += c * zeta_N^k on the power basis. k in [0, N).
    void accumulate(std::span<std::int64_t> acc, std::int64_t k, std::int64_t c) const;
    void accumulate(std::vector<BigInt>& acc, std::int64_t k, const BigInt& c) const;

    /// Where a root lives in this ring: zeta_n^e = sign * zeta_N^k.
    /// Requires normalize(n) | N. The sign is -1 exactly when n = 2m with m
    /// odd and m | N but n does not divide N.
    std::pair<std::int64_t, int> embed_root(const RootOfUnity& r) const;

    /// Sorted units of (Z/N)^x. For N = 1 this is {0}, the identity residue.
    const std::vector<std::int64_t>& units() const { return units_; }

    std::complex<double> root_value(std::int64_t k) const { return table_[static_cast<std::size_t>(k)]; }

    /// Exact: is sum of c * zeta_N^k over the given (k, c) pairs zero?
    bool sparse_is_zero(std::span<const std::pair<std::int64_t, std::int64_t>> terms) const;

    explicit CyclotomicRing(std::int64_t normalized_n);  // use get()

private:
    std::int64_t n_;
    std::int64_t phi_;
    std::vector<std::int64_t> phi_poly_;  // Phi_N coefficients, size phi_+1
    std::vector<std::int64_t> rows_;      // (n_ - phi_) rows, each phi_ wide
    std::int64_t max_row_;
    std::vector<std::int64_t> units_;
    std::vector<std::complex<double>> table_;
};

/// Canonical element of Z[zeta_N]: modulus plus phi(N) power-basis
/// coordinates, arbitrary-precision. Immutable value type; two elements are
/// equal iff they agree after lifting to the common (normalized) modulus.
class CycElement {
public:
    CycElement();  // zero at modulus 1

    static CycElement zero(std::int64_t n = 1);
    static CycElement from_integer(const BigInt& v);
    static CycElement from_root(const RootOfUnity& r);

    std::int64_t modulus() const { return ring_->modulus(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const std::shared_ptr<const CyclotomicRing>& ring() const { return ring_; }

    bool is_zero() const;
    /// True when the element is a rational integer (all non-constant
    /// coordinates vanish).
    bool is_rational() const;
    BigInt rational_value() const;  // requires is_rational()

    CycElement operator+(const CycElement& o) const;
    CycElement operator-(const CycElement& o) const;
    CycElement operator-() const;
    CycElement operator*(const CycElement& o) const;

    bool operator==(const CycElement& o) const;

    /// The automorphism zeta_N -> zeta_N^x. Requires gcd(x, N) = 1.
    CycElement galois(std::int64_t x) const;

    /// Re-express at modulus normalize(n); requires modulus() | normalize(n)
    /// up to the usual 2m folding (i.e. normalize(n) must be a multiple).
    CycElement lifted_to(std::int64_t n) const;

    std::complex<double> numeric() const;

    CycElement(std::shared_ptr<const CyclotomicRing> ring, std::vector<BigInt> coeffs);

private:
    std::shared_ptr<const CyclotomicRing> ring_;
    std::vector<BigInt> coeffs_;
};

/// Exact value of a formal sum at modulus normalize(base_modulus()).
/// Linear: sum_to_element(s + t) = sum_to_element(s) + sum_to_element(t).
CycElement sum_to_element(const SumOfRoots& s);

/// Exact vanishing test for a formal sum.
bool sum_is_zero(const SumOfRoots& s);

} // namespace cyclo
