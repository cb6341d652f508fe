#pragma once

#include <cstdint>
#include <optional>

#include "cyclo/root.hpp"

namespace cyclo {

/// Bounded exhaustive query for the length of a cyclotomic integer.
///
/// `target` is a known representation and must have no vanishing proper
/// nonempty sub-multiset (checked; strip first otherwise). `max_weight` is
/// the largest weight searched. `order_bound` restricts candidate roots to
/// M-th roots of unity; 0 selects the default
///     M = lcm(N_target, primorial(w(target) + max_weight)),
/// which is sound for certifying the true length (see
/// min_weight_representation).
struct LengthQuery {
    SumOfRoots target;
    std::int64_t max_weight = 0;
    std::int64_t order_bound = 0;
    std::uint64_t node_budget = 100'000'000;
};

/// Least-weight sum of at most max_weight M-th roots whose value equals the
/// target's value, or nullopt if none exists. Deterministic: least weight,
/// then lexicographically least exponent sequence.
///
/// Soundness of the default order bound: suppose the target (weight w, no
/// vanishing proper sub-multiset, orders dividing N) also equals a sum of
/// t' <= t roots delta_j with no vanishing sub-multiset among them (any
/// minimal-length representation qualifies). Then target - sum(delta) is a
/// vanishing sum; partition it into minimal blocks. No block lies entirely
/// in the target (no vanishing sub-multiset) or entirely in the deltas
/// (same), so every block mixes the two. A minimal vanishing sum of weight
/// u can be rotated so all its terms have order dividing primorial(u)
/// (Mann's theorem; constructively, square_free_rotate), and u <= w + t'.
/// Within a block containing target term tau and delta term delta, the
/// ratio delta/tau is a ratio of two primorial(w+t)-th roots, hence
/// ord(delta) | lcm(N, primorial(w+t)). So every candidate representation
/// already consists of M-th roots and the bounded search is exhaustive.
///
/// Throws invalid_argument if the precondition fails and budget_exceeded
/// if the node budget is exhausted (distinct from "absent").
std::optional<SumOfRoots> min_weight_representation(const LengthQuery& q);

/// Weight of the sum after greedily stripping vanishing sub-multisets
/// (repeatedly removing the least minimal vanishing subsum). An upper
/// bound for the length of the value.
std::int64_t length_upper_bound(const SumOfRoots& s, std::size_t weight_cap = 16);

/// Interval answer for the CLI: upper from length_upper_bound, lower from
/// the bounded search. `certified` is set when the two pin the length
/// exactly (witness found, or exhaustion with max_weight + 1 == upper).
struct LengthReport {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    bool certified = false;
    std::optional<SumOfRoots> witness;
};

LengthReport length_interval(const SumOfRoots& s, std::int64_t max_weight,
                             std::int64_t order_bound = 0,
                             std::uint64_t node_budget = 100'000'000);

} // namespace cyclo
