#pragma once

#include <cstdint>
#include <vector>

#include "cyclo/bigint.hpp"

namespace cyclo {

/// Dense integer polynomial, coefficients in ascending degree. The zero
/// polynomial has an empty coefficient vector.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    /// x^d with coefficient c.
    static IntPolynomial monomial(std::size_t d, BigInt c = 1);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is -1 by convention.
    std::int64_t degree() const {
        return static_cast<std::int64_t>(coeffs_.size()) - 1;
    }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
    const BigInt& leading() const { return coeffs_.back(); }

    bool operator==(const IntPolynomial& o) const = default;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;

    /// Exact division: throws verification_error if o does not divide *this.
    IntPolynomial divide_exact(const IntPolynomial& o) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// The n-th cyclotomic polynomial, exact and monic of degree phi(n).
/// Computed by exact division of x^n - 1 by the Phi_d of proper divisors;
/// results are memoized process-wide (thread-safe).
const IntPolynomial& cyclotomic_polynomial(std::int64_t n);

} // namespace cyclo
