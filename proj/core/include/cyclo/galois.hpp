#pragma once

#include <cstdint>
#include <vector>

#include "cyclo/element.hpp"
#include "cyclo/root.hpp"

namespace cyclo {

/// A subgroup of (Z/N)^x, N normalized. Elements are sorted residues in
/// [1, N) coprime to N; for N = 1 the trivial group is stored as {0}.
class UnitSubgroup {
public:
    UnitSubgroup() : modulus_(1), elements_{0} {}
    UnitSubgroup(std::int64_t modulus, std::vector<std::int64_t> elements);

    std::int64_t modulus() const { return modulus_; }
    const std::vector<std::int64_t>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }

    bool contains(std::int64_t x) const;
    bool is_cyclic() const;
    /// Multiplicative order of x within the group (x must be a member).
    std::int64_t element_order(std::int64_t x) const;

    bool operator==(const UnitSubgroup& o) const = default;

private:
    std::int64_t modulus_;
    std::vector<std::int64_t> elements_;
};

/// Closure of the generators under multiplication mod normalize(modulus).
/// Throws invalid_argument if a generator is not a unit.
UnitSubgroup subgroup_generated(std::int64_t modulus,
                                const std::vector<std::int64_t>& gens);

/// The unique subgroup of order d of the cyclic group (Z/p)^x, p prime.
/// Requires d | p - 1.
UnitSubgroup cyclic_subgroup_of_order(std::int64_t p, std::int64_t d);

/// Conductor data for a cyclotomic integer: the least f with the value in
/// Q_f, the stabilizer viewed at modulus f, and the tower degrees
/// index = [Q_f : Q(alpha)] and degree = [Q(alpha) : Q]. index * degree =
/// phi(f) always.
struct ConductorReport {
    std::int64_t conductor = 1;
    UnitSubgroup stabilizer_at_conductor;
    std::int64_t index = 1;
    std::int64_t degree = 1;
};

/// {x in (Z/N)^x : sigma_x(a) = a} by exhaustive scan over all phi(N)
/// units; N is the element's (normalized) modulus.
UnitSubgroup stabilizer(const CycElement& a);

/// Same subgroup computed from a formal sum without densifying each
/// conjugate: sigma_x maps the term exponents and the difference is
/// zero-tested sparsely. Agrees with stabilizer(sum_to_element(s)).
UnitSubgroup stabilizer(const SumOfRoots& s);

ConductorReport conductor(const CycElement& a);
ConductorReport conductor(const SumOfRoots& s);

/// |Gal(Q_{c(a)} / Q(a))| = order of the stabilizer at the conductor.
std::int64_t index_at_conductor(const CycElement& a);
std::int64_t index_at_conductor(const SumOfRoots& s);

/// Gaussian period sum: {zeta_p^x : x in h} for a subgroup h of (Z/p)^x.
/// Throws invalid_argument when p is not prime.
SumOfRoots orbit_sum(std::int64_t p, const UnitSubgroup& h);

namespace detail {
/// Conductor computation given a precomputed stabilizer at modulus n.
ConductorReport conductor_from_stabilizer(std::int64_t n, const UnitSubgroup& stab);
} // namespace detail

} // namespace cyclo
