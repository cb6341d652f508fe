#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cyclo/element.hpp"
#include "cyclo/root.hpp"

namespace cyclo {

/// A minimal vanishing sum of weight k, canonical up to rotation: every
/// term is an l(k)-th root of unity (l = primorial of k), the exponent
/// multiset is sorted with first entry 0, and among the k translations that
/// move each term in turn to exponent 0 this is the lexicographically
/// least. Two minimal sums are rotation-equivalent iff their canonical
/// forms are equal.
struct CanonicalMVS {
    std::int64_t weight = 0;
    std::int64_t primorial = 1;
    std::vector<std::int64_t> exponents;

    SumOfRoots to_sum() const;
    auto operator<=>(const CanonicalMVS&) const = default;
};

/// The set of minimal vanishing sums of one weight, up to rotation.
/// `complete` distinguishes an exhaustive atlas from an aborted run.
struct MVSAtlas {
    std::int64_t weight = 0;
    std::int64_t primorial = 1;
    bool complete = false;
    std::vector<CanonicalMVS> entries;  // sorted, pairwise distinct
};

struct EnumOptions {
    std::int64_t weight_cap = 8;
    std::uint64_t node_budget = 0;  // 0 = unlimited
    int threads = 1;
};

/// Exact: does the sum equal zero?
bool is_vanishing(const SumOfRoots& s);

/// Exact: vanishing with no proper nonempty vanishing sub-multiset.
/// Subset search is pruned numerically but decided exactly; weights above
/// the cap raise budget_exceeded (the search is 2^w).
bool is_minimal_vanishing(const SumOfRoots& s, std::size_t weight_cap = 16);

/// Partition a vanishing sum into minimal vanishing blocks. Deterministic:
/// repeatedly extracts the vanishing sub-multiset least in (size, then
/// lexicographic term order); the least vanishing sub-multiset is
/// automatically minimal. Throws invalid_argument when s is not vanishing.
std::vector<SumOfRoots> partition_minimal(const SumOfRoots& s,
                                          std::size_t weight_cap = 16);

/// Greedily strip vanishing sub-multisets (least first). The result has
/// the same value and no vanishing nonempty sub-multiset; it may be empty.
SumOfRoots strip_vanishing(const SumOfRoots& s, std::size_t weight_cap = 16);

/// Rotate a minimal vanishing sum so every term has square-free order with
/// all prime factors <= w(s). Returns (rotated sum, the rotation applied).
/// Works one prime at a time, largest first: terms are grouped by the
/// exponent of their p-part; minimality forces either every residue layer
/// to be occupied (then p <= w and p stays) or a single layer, which a
/// rotation by the inverse of that layer's p-part eliminates.
std::pair<SumOfRoots, RootOfUnity> square_free_rotate(const SumOfRoots& s);

/// Canonical form of a minimal vanishing sum (see CanonicalMVS).
CanonicalMVS canonicalize(const SumOfRoots& s);

/// Exhaustive atlas of minimal vanishing sums of weight k up to rotation.
/// DFS over nondecreasing exponent multisets in Z/l(k) with the first
/// exponent fixed to 0; floating point only prunes, exact arithmetic
/// decides at the leaves.
MVSAtlas enumerate_mvs(std::int64_t k, const EnumOptions& options = {});

/// Structure check on a canonical class: either a rotation of the full
/// p-th root sum with p = weight prime, or the prime support has size >= 3
/// and the weight is at least (p1-1)(p2-1) + p3 - 1 for its three smallest
/// primes, with the equality case verified to be a rotation of the product
/// form (sum over nontrivial p1-th roots)(sum over nontrivial p2-th roots)
/// + (sum over nontrivial p3-th roots).
bool lam_leung_check(const CanonicalMVS& c);

} // namespace cyclo
