#include "cyclo/vanishing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <thread>

#include "cyclo/errors.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

namespace {

constexpr double kTol = 1e-9;  // float pruning slack; never decides vanishing

// Combination search for the least vanishing sub-multiset (by size, then
// lexicographic over the sorted term vector). Floating point rejects the
// bulk; candidates that look zero are confirmed exactly.
struct SubsetSearcher {
    const std::vector<RootOfUnity>& terms;
    std::shared_ptr<const CyclotomicRing> ring;
    std::vector<std::pair<std::int64_t, std::int64_t>> embedded;
    std::vector<std::complex<double>> values;
    std::vector<std::size_t> chosen;

    explicit SubsetSearcher(const std::vector<RootOfUnity>& t, std::int64_t modulus)
        : terms(t), ring(CyclotomicRing::get(modulus)) {
        embedded.reserve(t.size());
        values.reserve(t.size());
        for (const auto& r : t) {
            auto [k, sign] = ring->embed_root(r);
            embedded.emplace_back(k, sign);
            values.push_back(r.value());
        }
    }

    std::optional<std::vector<std::size_t>> find(std::size_t max_size) {
        for (std::size_t sz = 1; sz <= max_size; ++sz) {
            chosen.clear();
            if (rec(0, sz, {0.0, 0.0})) return chosen;
        }
        return std::nullopt;
    }

    bool rec(std::size_t start, std::size_t need, std::complex<double> acc) {
        if (need == 0) {
            if (std::abs(acc) > kTol) return false;
            std::vector<std::pair<std::int64_t, std::int64_t>> sel;
            sel.reserve(chosen.size());
            for (std::size_t i : chosen) sel.push_back(embedded[i]);
            return ring->sparse_is_zero(sel);
        }
        for (std::size_t i = start; i + need <= terms.size(); ++i) {
            if (i > start && terms[i] == terms[i - 1]) continue;
            // |acc + rest| >= |acc| - (#rest); cut when even all-unit terms
            // cannot bring the sum back near zero.
            if (std::abs(acc + values[i]) > static_cast<double>(need - 1) + kTol)
                continue;
            chosen.push_back(i);
            if (rec(i + 1, need - 1, acc + values[i])) return true;
            chosen.pop_back();
        }
        return false;
    }
};

} // namespace

bool is_vanishing(const SumOfRoots& s) {
    return sum_is_zero(s);
}

bool is_minimal_vanishing(const SumOfRoots& s, std::size_t weight_cap) {
    if (!sum_is_zero(s)) return false;
    std::size_t w = s.weight();
    if (w == 0) return true;
    if (w > weight_cap)
        throw budget_exceeded("is_minimal_vanishing: weight exceeds cap");
    // A proper vanishing sub-multiset has a vanishing complement, so one of
    // the two has size <= w/2.
    SubsetSearcher search(s.terms(), s.base_modulus());
    return !search.find(w / 2).has_value();
}

std::vector<SumOfRoots> partition_minimal(const SumOfRoots& s,
                                          std::size_t weight_cap) {
    if (!sum_is_zero(s))
        throw invalid_argument("partition_minimal: sum does not vanish");
    if (s.weight() > weight_cap)
        throw budget_exceeded("partition_minimal: weight exceeds cap");
    std::vector<SumOfRoots> blocks;
    std::vector<RootOfUnity> remaining = s.terms();
    while (!remaining.empty()) {
        SumOfRoots rem(remaining);
        SubsetSearcher search(rem.terms(), rem.base_modulus());
        auto found = search.find(rem.terms().size());
        if (!found)
            throw verification_error("partition_minimal: no vanishing subset");
        // The least vanishing sub-multiset is minimal: any proper vanishing
        // part of it would be smaller.
        std::vector<RootOfUnity> block;
        for (std::size_t i : *found) block.push_back(rem.terms()[i]);
        blocks.emplace_back(block);
        std::vector<RootOfUnity> next;
        std::size_t fi = 0;
        for (std::size_t i = 0; i < rem.terms().size(); ++i) {
            if (fi < found->size() && (*found)[fi] == i) {
                ++fi;
                continue;
            }
            next.push_back(rem.terms()[i]);
        }
        remaining = std::move(next);
    }
    return blocks;
}

SumOfRoots strip_vanishing(const SumOfRoots& s, std::size_t weight_cap) {
    if (s.weight() > weight_cap)
        throw budget_exceeded("strip_vanishing: weight exceeds cap");
    std::vector<RootOfUnity> remaining = s.terms();
    while (!remaining.empty()) {
        SumOfRoots rem(remaining);
        SubsetSearcher search(rem.terms(), rem.base_modulus());
        auto found = search.find(rem.terms().size());
        if (!found) break;
        std::vector<RootOfUnity> next;
        std::size_t fi = 0;
        for (std::size_t i = 0; i < rem.terms().size(); ++i) {
            if (fi < found->size() && (*found)[fi] == i) {
                ++fi;
                continue;
            }
            next.push_back(rem.terms()[i]);
        }
        remaining = std::move(next);
    }
    return SumOfRoots(std::move(remaining));
}

namespace {

// p-part exponent of zeta_L^E for p^a || L: the j with E/L = j/p^a + k/m.
std::int64_t p_part_exponent(std::int64_t E, std::int64_t pa, std::int64_t m) {
    return E % pa * inv_mod(m % pa, pa) % pa;
}

std::pair<SumOfRoots, RootOfUnity> square_free_rotate_unchecked(const SumOfRoots& s) {
    SumOfRoots cur = s;
    RootOfUnity eps;  // identity
    const std::int64_t w = static_cast<std::int64_t>(s.weight());
    bool changed = true;
    while (changed) {
        changed = false;
        std::int64_t L = cur.base_modulus();
        if (L == 1) break;
        auto factors = factorize(L);
        for (auto it = factors.rbegin(); it != factors.rend() && !changed; ++it) {
            auto [p, a] = *it;
            std::int64_t pa = 1;
            for (int i = 0; i < a; ++i) pa *= p;
            std::int64_t m = L / pa;
            // Layer index of each term: the exponent of its p-part.
            std::vector<std::int64_t> layer;
            layer.reserve(cur.terms().size());
            for (const auto& t : cur.terms()) {
                std::int64_t E = t.exponent() * (L / t.order());
                layer.push_back(p_part_exponent(E, pa, m));
            }
            if (a >= 2) {
                // Minimality forces a single residue class mod p^(a-1).
                std::int64_t mod = pa / p;
                std::int64_t r = layer[0] % mod;
                for (std::int64_t j : layer)
                    if (j % mod != r)
                        throw verification_error(
                            "square_free_rotate: prime-power layers split (input not minimal?)");
                cur = cur.rotated(RootOfUnity::make(pa, pa - r));
                eps = eps * RootOfUnity::make(pa, pa - r);
                changed = true;
            } else {
                std::set<std::int64_t> classes(layer.begin(), layer.end());
                if (classes.size() == 1) {
                    std::int64_t j = *classes.begin();
                    // j = 0 cannot happen: some term realizes v_p(L) = 1.
                    cur = cur.rotated(RootOfUnity::make(p, p - j));
                    eps = eps * RootOfUnity::make(p, p - j);
                    changed = true;
                } else if (static_cast<std::int64_t>(classes.size()) != p) {
                    throw verification_error(
                        "square_free_rotate: partially filled layers (input not minimal?)");
                }
                // All p layers occupied: p stays and p <= w is forced.
            }
        }
    }
    for (const auto& t : cur.terms()) {
        for (auto [p, a] : factorize(t.order())) {
            if (a >= 2 || p > w)
                throw verification_error("square_free_rotate: postcondition failed");
        }
    }
    return {cur, eps};
}

CanonicalMVS canonicalize_unchecked(const SumOfRoots& s) {
    std::int64_t k = static_cast<std::int64_t>(s.weight());
    if (k == 0) return CanonicalMVS{0, 1, {}};
    auto [rot, eps] = square_free_rotate_unchecked(s);
    std::int64_t ell = primorial64(k);
    std::vector<std::int64_t> base;
    base.reserve(rot.terms().size());
    for (const auto& t : rot.terms())
        base.push_back(t.exponent() * (ell / t.order()) % ell);
    std::sort(base.begin(), base.end());
    // A rotation between two sums of ell-th roots is itself an ell-th root
    // (it is a ratio of two terms), so rotations act as translations on the
    // exponents; trying the k translations that bring each term to 0 covers
    // every candidate with first exponent 0.
    std::vector<std::int64_t> best;
    std::vector<std::int64_t> cand(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (i > 0 && base[i] == base[i - 1]) continue;
        for (std::size_t j = 0; j < base.size(); ++j) {
            cand[j] = base[j] - base[i];
            if (cand[j] < 0) cand[j] += ell;
        }
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = cand;
    }
    return CanonicalMVS{k, ell, std::move(best)};
}

} // namespace

std::pair<SumOfRoots, RootOfUnity> square_free_rotate(const SumOfRoots& s) {
    if (!is_minimal_vanishing(s))
        throw invalid_argument("square_free_rotate: input is not a minimal vanishing sum");
    return square_free_rotate_unchecked(s);
}

CanonicalMVS canonicalize(const SumOfRoots& s) {
    if (!is_minimal_vanishing(s))
        throw invalid_argument("canonicalize: input is not a minimal vanishing sum");
    return canonicalize_unchecked(s);
}

SumOfRoots CanonicalMVS::to_sum() const {
    std::vector<RootOfUnity> terms;
    terms.reserve(exponents.size());
    for (std::int64_t e : exponents) terms.push_back(RootOfUnity::make(primorial, e));
    return SumOfRoots(std::move(terms));
}

namespace {

struct EnumShared {
    std::int64_t k = 0;
    std::int64_t ell = 1;
    std::shared_ptr<const CyclotomicRing> ring;
    std::int64_t phi = 1;
    std::vector<std::int64_t> embed_k;
    std::vector<std::int64_t> embed_s;
    std::vector<std::complex<double>> cval;
    std::vector<std::int64_t> primes;
    std::vector<std::vector<std::int32_t>> residue;  // residue[pi][E] = E mod p
    std::vector<double> suf_min_re, suf_max_re, suf_min_im, suf_max_im;
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::int64_t> next_second{0};
    std::atomic<bool> aborted{false};
};

struct EnumWorker {
    EnumShared& sh;
    std::vector<std::int64_t> acc;              // exact accumulator (phi wide)
    std::vector<std::int32_t> cnt_exp;          // multiplicity per exponent
    std::vector<std::vector<std::int32_t>> cnt; // per prime, per residue
    std::vector<std::int32_t> occupied;         // per prime
    std::vector<std::int64_t> chosen;
    std::vector<CanonicalMVS> found;
    std::uint64_t local_nodes = 0;

    explicit EnumWorker(EnumShared& shared) : sh(shared) {
        acc.assign(static_cast<std::size_t>(sh.phi), 0);
        cnt_exp.assign(static_cast<std::size_t>(sh.ell), 0);
        cnt.resize(sh.primes.size());
        for (std::size_t i = 0; i < sh.primes.size(); ++i)
            cnt[i].assign(static_cast<std::size_t>(sh.primes[i]), 0);
        occupied.assign(sh.primes.size(), 0);
    }

    bool budget_hit() {
        if (++local_nodes % 4096 == 0) {
            if (sh.budget && sh.nodes.fetch_add(4096) + 4096 > sh.budget)
                sh.aborted.store(true);
        }
        return sh.aborted.load(std::memory_order_relaxed);
    }

    // Candidate admissible at remaining count m (terms still to add after it)?
    bool admissible(std::int64_t e, std::int64_t m,
                    const std::complex<double>& after) const {
        if (std::abs(after) > static_cast<double>(m) + kTol) return false;
        if (m > 0) {
            // The rest is m roots with exponents >= e: componentwise bounds.
            double re = -after.real(), im = -after.imag();
            double dm = static_cast<double>(m);
            if (re > dm * sh.suf_max_re[static_cast<std::size_t>(e)] + kTol) return false;
            if (re < dm * sh.suf_min_re[static_cast<std::size_t>(e)] - kTol) return false;
            if (im > dm * sh.suf_max_im[static_cast<std::size_t>(e)] + kTol) return false;
            if (im < dm * sh.suf_min_im[static_cast<std::size_t>(e)] - kTol) return false;
        }
        // Layer closure: once a prime sees >= 2 residue classes, a minimal
        // completion must occupy all p of them.
        for (std::size_t i = 0; i < sh.primes.size(); ++i) {
            std::int32_t o = occupied[i];
            if (cnt[i][static_cast<std::size_t>(sh.residue[i][static_cast<std::size_t>(e)])] == 0) ++o;
            if (o >= 2 && sh.primes[i] - o > m) return false;
        }
        // Completing a rotated full-prime sum R_p inside a larger selection
        // dooms minimality. Allowed only when it is the entire leaf.
        std::int64_t picked = static_cast<std::int64_t>(chosen.size()) + 1;
        for (std::size_t i = 0; i < sh.primes.size(); ++i) {
            std::int64_t p = sh.primes[i];
            if (p == sh.k && picked == sh.k) continue;
            std::int64_t step = sh.ell / p;
            bool full = true;
            for (std::int64_t t = 1; t < p; ++t) {
                std::int64_t other = e - t * step;
                if (other < 0) other += sh.ell;
                if (cnt_exp[static_cast<std::size_t>(other)] == 0) {
                    full = false;
                    break;
                }
            }
            if (full) return false;
        }
        return true;
    }

    void push(std::int64_t e) {
        chosen.push_back(e);
        ++cnt_exp[static_cast<std::size_t>(e)];
        for (std::size_t i = 0; i < sh.primes.size(); ++i) {
            auto& c = cnt[i][static_cast<std::size_t>(sh.residue[i][static_cast<std::size_t>(e)])];
            if (c == 0) ++occupied[i];
            ++c;
        }
        sh.ring->accumulate(acc, sh.embed_k[static_cast<std::size_t>(e)],
                            sh.embed_s[static_cast<std::size_t>(e)]);
    }

    void pop() {
        std::int64_t e = chosen.back();
        chosen.pop_back();
        --cnt_exp[static_cast<std::size_t>(e)];
        for (std::size_t i = 0; i < sh.primes.size(); ++i) {
            auto& c = cnt[i][static_cast<std::size_t>(sh.residue[i][static_cast<std::size_t>(e)])];
            if (--c == 0) --occupied[i];
        }
        sh.ring->accumulate(acc, sh.embed_k[static_cast<std::size_t>(e)],
                            -sh.embed_s[static_cast<std::size_t>(e)]);
    }

    bool subset_vanishes(std::size_t start, std::size_t need, std::complex<double> partial,
                         std::vector<std::size_t>& sel) const {
        if (need == 0) {
            if (std::abs(partial) > kTol) return false;
            std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
            pairs.reserve(sel.size());
            for (std::size_t i : sel) {
                std::int64_t e = chosen[i];
                pairs.emplace_back(sh.embed_k[static_cast<std::size_t>(e)],
                                   sh.embed_s[static_cast<std::size_t>(e)]);
            }
            return sh.ring->sparse_is_zero(pairs);
        }
        for (std::size_t i = start; i + need <= chosen.size(); ++i) {
            if (i > start && chosen[i] == chosen[i - 1]) continue;
            std::complex<double> next = partial + sh.cval[static_cast<std::size_t>(chosen[i])];
            if (std::abs(next) > static_cast<double>(need - 1) + kTol) continue;
            sel.push_back(i);
            if (subset_vanishes(i + 1, need - 1, next, sel)) return true;
            sel.pop_back();
        }
        return false;
    }

    void leaf() {
        for (std::int64_t v : acc)
            if (v != 0) return;
        // Exact zero; confirm minimality by exact subset search.
        std::vector<std::size_t> sel;
        for (std::size_t sz = 1; sz <= chosen.size() / 2; ++sz) {
            sel.clear();
            if (subset_vanishes(0, sz, {0.0, 0.0}, sel)) return;
        }
        std::vector<RootOfUnity> terms;
        terms.reserve(chosen.size());
        for (std::int64_t e : chosen) terms.push_back(RootOfUnity::make(sh.ell, e));
        found.push_back(canonicalize_unchecked(SumOfRoots(std::move(terms))));
    }

    void dfs(std::int64_t min_e, std::complex<double> partial) {
        if (static_cast<std::int64_t>(chosen.size()) == sh.k) {
            leaf();
            return;
        }
        std::int64_t m = sh.k - static_cast<std::int64_t>(chosen.size()) - 1;
        if (m == 0 && sh.ell > 16) {
            // Last slot: the missing root is forced to be -partial, so look
            // it up by angle instead of scanning.
            double ang = std::atan2(-partial.imag(), -partial.real());
            double pos = ang / (2.0 * std::numbers::pi) * static_cast<double>(sh.ell);
            std::int64_t base = static_cast<std::int64_t>(std::llround(pos));
            for (std::int64_t d = -1; d <= 1; ++d) {
                std::int64_t e = (base + d) % sh.ell;
                if (e < 0) e += sh.ell;
                if (e < min_e) continue;
                std::complex<double> after = partial + sh.cval[static_cast<std::size_t>(e)];
                if (!admissible(e, 0, after)) continue;
                if (budget_hit()) return;
                push(e);
                dfs(e, after);
                pop();
            }
            return;
        }
        for (std::int64_t e = min_e; e < sh.ell; ++e) {
            std::complex<double> after = partial + sh.cval[static_cast<std::size_t>(e)];
            if (!admissible(e, m, after)) continue;
            if (budget_hit()) return;
            push(e);
            dfs(e, after);
            pop();
        }
    }
};

} // namespace

MVSAtlas enumerate_mvs(std::int64_t k, const EnumOptions& options) {
    if (k < 1) throw invalid_argument("enumerate_mvs: weight must be positive");
    if (k > options.weight_cap)
        throw budget_exceeded("enumerate_mvs: weight exceeds cap");

    EnumShared sh;
    sh.k = k;
    sh.ell = primorial64(k);
    sh.ring = CyclotomicRing::get(sh.ell);
    sh.phi = sh.ring->phi();
    sh.budget = options.node_budget;
    sh.embed_k.resize(static_cast<std::size_t>(sh.ell));
    sh.embed_s.resize(static_cast<std::size_t>(sh.ell));
    sh.cval.resize(static_cast<std::size_t>(sh.ell));
    for (std::int64_t e = 0; e < sh.ell; ++e) {
        RootOfUnity r = RootOfUnity::make(sh.ell, e);
        auto [kk, ss] = sh.ring->embed_root(r);
        sh.embed_k[static_cast<std::size_t>(e)] = kk;
        sh.embed_s[static_cast<std::size_t>(e)] = ss;
        sh.cval[static_cast<std::size_t>(e)] = r.value();
    }
    for (std::int64_t p : primes_upto(k)) sh.primes.push_back(p);
    sh.residue.resize(sh.primes.size());
    for (std::size_t i = 0; i < sh.primes.size(); ++i) {
        sh.residue[i].resize(static_cast<std::size_t>(sh.ell));
        for (std::int64_t e = 0; e < sh.ell; ++e)
            sh.residue[i][static_cast<std::size_t>(e)] =
                static_cast<std::int32_t>(e % sh.primes[i]);
    }
    std::size_t n = static_cast<std::size_t>(sh.ell);
    sh.suf_min_re.assign(n + 1, 2.0);
    sh.suf_max_re.assign(n + 1, -2.0);
    sh.suf_min_im.assign(n + 1, 2.0);
    sh.suf_max_im.assign(n + 1, -2.0);
    for (std::size_t e = n; e-- > 0;) {
        sh.suf_min_re[e] = std::min(sh.suf_min_re[e + 1], sh.cval[e].real());
        sh.suf_max_re[e] = std::max(sh.suf_max_re[e + 1], sh.cval[e].real());
        sh.suf_min_im[e] = std::min(sh.suf_min_im[e + 1], sh.cval[e].imag());
        sh.suf_max_im[e] = std::max(sh.suf_max_im[e + 1], sh.cval[e].imag());
    }

    MVSAtlas atlas;
    atlas.weight = k;
    atlas.primorial = sh.ell;

    std::vector<CanonicalMVS> all;
    if (k == 1) {
        atlas.complete = true;
        return atlas;  // a single root of unity never vanishes
    }

    // Work unit: the second exponent e2 (first is pinned to 0); threads pull
    // e2 values from a shared counter. Results are merged and sorted, so the
    // atlas does not depend on the schedule.
    int threads = std::max(1, options.threads);
    std::vector<std::vector<CanonicalMVS>> results(static_cast<std::size_t>(threads));
    auto work = [&sh](std::vector<CanonicalMVS>& out) {
        EnumWorker w(sh);
        while (true) {
            std::int64_t e2 = sh.next_second.fetch_add(1);
            if (e2 >= sh.ell || sh.aborted.load()) break;
            std::complex<double> p0 = sh.cval[0];
            if (!w.admissible(0, sh.k - 1, p0)) continue;
            w.push(0);
            std::complex<double> p1 = p0 + sh.cval[static_cast<std::size_t>(e2)];
            if (w.admissible(e2, sh.k - 2, p1)) {
                w.push(e2);
                w.dfs(e2, p1);
                w.pop();
            }
            w.pop();
        }
        out = std::move(w.found);
    };
    if (threads == 1) {
        work(results[0]);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, std::ref(results[static_cast<std::size_t>(t)]));
        for (auto& th : pool) th.join();
    }
    for (auto& r : results)
        all.insert(all.end(), std::make_move_iterator(r.begin()),
                   std::make_move_iterator(r.end()));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    atlas.entries = std::move(all);
    atlas.complete = !sh.aborted.load();
    return atlas;
}

SumOfRoots lam_leung_equality_sum(std::int64_t p1, std::int64_t p2, std::int64_t p3) {
    std::vector<RootOfUnity> terms;
    for (std::int64_t i = 1; i < p1; ++i)
        for (std::int64_t j = 1; j < p2; ++j)
            terms.push_back(RootOfUnity::make(p1, i) * RootOfUnity::make(p2, j));
    for (std::int64_t i = 1; i < p3; ++i) terms.push_back(RootOfUnity::make(p3, i));
    return SumOfRoots(std::move(terms));
}

bool lam_leung_check(const CanonicalMVS& c) {
    if (c.weight < 2) return false;
    // Case (i): a rotation of the full sum of p-th roots, p = weight prime.
    if (is_prime(c.weight) && c.primorial % c.weight == 0) {
        std::int64_t step = c.primorial / c.weight;
        bool match = true;
        for (std::size_t i = 0; i < c.exponents.size(); ++i)
            if (c.exponents[i] != static_cast<std::int64_t>(i) * step) {
                match = false;
                break;
            }
        if (match) return true;
    }
    // Case (ii): three or more primes in the support and the weight bound.
    std::set<std::int64_t> support;
    for (std::int64_t e : c.exponents) {
        std::int64_t order = c.primorial / std::gcd(e, c.primorial);
        for (auto [p, a] : factorize(order)) support.insert(p);
    }
    if (support.size() < 3) return false;
    auto it = support.begin();
    std::int64_t p1 = *it++, p2 = *it++, p3 = *it++;
    std::int64_t bound = (p1 - 1) * (p2 - 1) + p3 - 1;
    if (c.weight < bound) return false;
    if (c.weight > bound) return true;
    return c == canonicalize(lam_leung_equality_sum(p1, p2, p3));
}

} // namespace cyclo
