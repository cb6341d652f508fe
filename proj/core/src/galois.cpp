#include "cyclo/galois.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cyclo/errors.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

UnitSubgroup::UnitSubgroup(std::int64_t modulus, std::vector<std::int64_t> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
    if (modulus_ < 1) throw invalid_argument("UnitSubgroup: bad modulus");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (modulus_ == 1) {
        elements_ = {0};
        return;
    }
    for (std::int64_t x : elements_)
        if (x < 1 || x >= modulus_ || std::gcd(x, modulus_) != 1)
            throw invalid_argument("UnitSubgroup: element is not a unit residue");
    if (elements_.empty() || elements_.front() > 1 || !contains(1))
        throw invalid_argument("UnitSubgroup: must contain the identity");
}

bool UnitSubgroup::contains(std::int64_t x) const {
    x %= modulus_;
    if (x < 0) x += modulus_;
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::int64_t UnitSubgroup::element_order(std::int64_t x) const {
    if (modulus_ == 1) return 1;
    std::int64_t y = x % modulus_;
    if (y < 0) y += modulus_;
    std::int64_t o = 1;
    std::int64_t cur = y;
    while (cur != 1) {
        cur = mul_mod(cur, y, modulus_);
        ++o;
        if (o > modulus_) throw invalid_argument("element_order: not a unit");
    }
    return o;
}

bool UnitSubgroup::is_cyclic() const {
    for (std::int64_t x : elements_)
        if (element_order(x) == static_cast<std::int64_t>(order())) return true;
    return order() <= 1;
}

UnitSubgroup subgroup_generated(std::int64_t modulus,
                                const std::vector<std::int64_t>& gens) {
    std::int64_t n = normalize_modulus(modulus);
    if (n == 1) return UnitSubgroup();
    std::set<std::int64_t> elems{1};
    std::vector<std::int64_t> frontier{1};
    std::vector<std::int64_t> g;
    for (std::int64_t x : gens) {
        std::int64_t r = x % n;
        if (r < 0) r += n;
        if (std::gcd(r, n) != 1)
            throw invalid_argument("subgroup_generated: generator is not a unit");
        g.push_back(r);
    }
    while (!frontier.empty()) {
        std::int64_t x = frontier.back();
        frontier.pop_back();
        for (std::int64_t y : g) {
            std::int64_t z = mul_mod(x, y, n);
            if (elems.insert(z).second) frontier.push_back(z);
        }
    }
    return UnitSubgroup(n, std::vector<std::int64_t>(elems.begin(), elems.end()));
}

UnitSubgroup cyclic_subgroup_of_order(std::int64_t p, std::int64_t d) {
    if (!is_prime(p)) throw invalid_argument("cyclic_subgroup_of_order: p not prime");
    if (d < 1 || (p - 1) % d != 0)
        throw invalid_argument("cyclic_subgroup_of_order: order does not divide p-1");
    std::int64_t g = primitive_root(p);
    std::int64_t h = pow_mod(g, static_cast<std::uint64_t>((p - 1) / d), p);
    return subgroup_generated(p, {h});
}

UnitSubgroup stabilizer(const CycElement& a) {
    const auto& ring = *a.ring();
    std::int64_t n = ring.modulus();
    if (n == 1) return UnitSubgroup();
    std::vector<std::int64_t> fixers;
    for (std::int64_t x : ring.units()) {
        if (x == 1 || a.galois(x) == a) fixers.push_back(x);
    }
    return UnitSubgroup(n, std::move(fixers));
}

UnitSubgroup stabilizer(const SumOfRoots& s) {
    auto ring_ptr = CyclotomicRing::get(s.base_modulus());
    const auto& ring = *ring_ptr;
    std::int64_t n = ring.modulus();
    if (n == 1) return UnitSubgroup();

    // Terms as (exponent, coefficient) pairs at the normalized modulus.
    std::vector<std::pair<std::int64_t, std::int64_t>> base;
    for (const auto& t : s.terms()) {
        auto [k, sign] = ring.embed_root(t);
        base.emplace_back(k, sign);
    }

    std::int64_t phi = ring.phi();
    std::vector<std::int64_t> target(static_cast<std::size_t>(phi), 0);
    for (auto [k, c] : base) ring.accumulate(target, k, c);

    std::vector<std::int64_t> acc(static_cast<std::size_t>(phi), 0);
    std::vector<std::int64_t> fixers;
    for (std::int64_t x : ring.units()) {
        if (x == 1) {
            fixers.push_back(1);
            continue;
        }
        std::fill(acc.begin(), acc.end(), 0);
        for (auto [k, c] : base) ring.accumulate(acc, k * x % n, c);
        if (acc == target) fixers.push_back(x);
    }
    return UnitSubgroup(n, std::move(fixers));
}

namespace detail {

ConductorReport conductor_from_stabilizer(std::int64_t n, const UnitSubgroup& stab) {
    ConductorReport rep;
    if (n == 1) {
        rep.conductor = 1;
        rep.stabilizer_at_conductor = UnitSubgroup();
        rep.index = 1;
        rep.degree = 1;
        return rep;
    }
    // Walk normalized divisors of n in increasing order; the conductor is
    // the least f whose reduction kernel {x = 1 mod f} fixes the element.
    for (std::int64_t f : divisors(n)) {
        if (f % 4 == 2) continue;  // not a normalized modulus
        bool ok = true;
        for (std::int64_t x = 1; x < n; x += f) {
            if (std::gcd(x, n) != 1) continue;
            if (!stab.contains(x)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        rep.conductor = f;
        if (f == 1) {
            rep.stabilizer_at_conductor = UnitSubgroup();
            rep.index = 1;
            rep.degree = 1;
            return rep;
        }
        // Units of n surject onto units of f; kernel elements fix the
        // element at the conductor, so the image of the stabilizer is the
        // stabilizer at f and its size is |stab| / |kernel|.
        std::vector<std::int64_t> image;
        image.reserve(stab.order());
        for (std::int64_t x : stab.elements()) image.push_back(x % f);
        rep.stabilizer_at_conductor = UnitSubgroup(f, std::move(image));
        rep.index = static_cast<std::int64_t>(rep.stabilizer_at_conductor.order());
        std::int64_t phif = euler_phi(f);
        if (phif % rep.index != 0)
            throw verification_error("conductor: index does not divide phi(f)");
        rep.degree = phif / rep.index;
        return rep;
    }
    throw verification_error("conductor: no admissible divisor (impossible)");
}

} // namespace detail

ConductorReport conductor(const CycElement& a) {
    return detail::conductor_from_stabilizer(a.modulus(), stabilizer(a));
}

ConductorReport conductor(const SumOfRoots& s) {
    std::int64_t n = normalize_modulus(s.base_modulus());
    return detail::conductor_from_stabilizer(n, stabilizer(s));
}

std::int64_t index_at_conductor(const CycElement& a) {
    return conductor(a).index;
}

std::int64_t index_at_conductor(const SumOfRoots& s) {
    return conductor(s).index;
}

SumOfRoots orbit_sum(std::int64_t p, const UnitSubgroup& h) {
    if (!is_prime(p)) throw invalid_argument("orbit_sum: p must be prime");
    if (h.modulus() != p)
        throw invalid_argument("orbit_sum: subgroup modulus must equal p");
    std::vector<RootOfUnity> terms;
    terms.reserve(h.order());
    for (std::int64_t x : h.elements())
        terms.push_back(RootOfUnity::make(p, x));
    return SumOfRoots(std::move(terms));
}

} // namespace cyclo
