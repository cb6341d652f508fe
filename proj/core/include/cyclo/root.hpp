#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cyclo {

/// A single root of unity zeta_n^e = e^(2*pi*i*e/n), kept in lowest terms:
/// gcd(e, n) = 1 once canonicalized, and (n, e) = (1, 0) represents 1.
class RootOfUnity {
public:
    RootOfUnity() : order_(1), exponent_(0) {}

    /// Canonical lowest-terms root for zeta_n^e; reduces e mod n and divides
    /// out the gcd. Throws invalid_argument for n < 1.
    static RootOfUnity make(std::int64_t n, std::int64_t e);

    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }

    bool is_one() const { return order_ == 1; }
    bool is_minus_one() const { return order_ == 2; }

    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const;
    RootOfUnity negated() const;  // multiplication by zeta_2

    /// zeta_n^e -> zeta_n^(e*x mod n). Requires gcd(x, n) = 1.
    RootOfUnity galois(std::int64_t x) const;

    std::complex<double> value() const;

    /// Ordering used everywhere a deterministic term order is needed.
    auto operator<=>(const RootOfUnity& o) const = default;

    /// Grammar form "e/n".
    std::string to_string() const;

private:
    RootOfUnity(std::int64_t n, std::int64_t e) : order_(n), exponent_(e) {}
    std::int64_t order_;
    std::int64_t exponent_;
};

/// A formal multiset of roots of unity. The multiset is the representation
/// of a cyclotomic integer; its value lives in CycElement. Terms are kept
/// sorted, so equal multisets compare equal.
class SumOfRoots {
public:
    SumOfRoots() = default;
    explicit SumOfRoots(std::vector<RootOfUnity> terms);

    static SumOfRoots parse(std::string_view text);

    const std::vector<RootOfUnity>& terms() const { return terms_; }
    std::size_t weight() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// lcm of the term orders (1 for the empty sum). Not normalized.
    std::int64_t base_modulus() const;

    void add_term(const RootOfUnity& r);

    SumOfRoots disjoint_union(const SumOfRoots& o) const;

    /// Multiply every term by eps (a "rotation").
    SumOfRoots rotated(const RootOfUnity& eps) const;

    /// Apply zeta -> zeta^x termwise. Requires gcd(x, base_modulus()) = 1.
    SumOfRoots galois(std::int64_t x) const;

    std::complex<double> value() const;

    bool operator==(const SumOfRoots& o) const = default;
    auto operator<=>(const SumOfRoots& o) const = default;

    /// Grammar form "e1/n1, e2/n2, ..." with k* multiplicity prefixes.
    std::string to_string() const;

private:
    std::vector<RootOfUnity> terms_;
};

} // namespace cyclo
