#include "cyclo/element.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <mutex>
#include <numbers>

#include "cyclo/errors.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

std::int64_t normalize_modulus(std::int64_t n) {
    if (n < 1) throw invalid_argument("normalize_modulus: n must be positive");
    return (n % 4 == 2) ? n / 2 : n;
}

RootOfUnity make_root(std::int64_t n, std::int64_t e) {
    return RootOfUnity::make(n, e);
}

namespace {

// Safety margin so sparse accumulations of modest multiplicity need no
// per-operation overflow checks.
constexpr std::int64_t kRowMagnitudeCap = std::int64_t{1} << 40;
constexpr std::size_t kRingCacheBytes = std::size_t{768} << 20;

std::size_t ring_bytes_estimate(std::int64_t n, std::int64_t phi) {
    return static_cast<std::size_t>((n - phi) * phi + phi) * sizeof(std::int64_t) +
           static_cast<std::size_t>(n) * sizeof(std::complex<double>);
}

} // namespace

CyclotomicRing::CyclotomicRing(std::int64_t n) : n_(n) {
    phi_ = euler_phi(n);
    if (ring_bytes_estimate(n_, phi_) > kRingCacheBytes)
        throw budget_exceeded("modulus too large for the reduction-table ring");

    const IntPolynomial& phi_poly = cyclotomic_polynomial(n);
    phi_poly_.resize(static_cast<std::size_t>(phi_) + 1);
    for (std::int64_t i = 0; i <= phi_; ++i) {
        const BigInt& c = phi_poly[static_cast<std::size_t>(i)];
        if (!fits_int64(c))
            throw budget_exceeded("cyclotomic polynomial exceeds int64 range");
        phi_poly_[static_cast<std::size_t>(i)] = c.get_si();
    }

    // rows_[k - phi] = coordinates of zeta^k. Row phi comes from
    // x^phi = -(Phi - x^phi); each next row is a shift with the spilled top
    // coefficient folded back through row phi.
    rows_.assign(static_cast<std::size_t>((n_ - phi_) * phi_), 0);
    max_row_ = 1;
    if (n_ > phi_) {
        std::int64_t* r0 = rows_.data();
        for (std::int64_t i = 0; i < phi_; ++i) r0[i] = -phi_poly_[static_cast<std::size_t>(i)];
        for (std::int64_t k = phi_ + 1; k < n_; ++k) {
            const std::int64_t* prev = rows_.data() + (k - 1 - phi_) * phi_;
            std::int64_t* cur = rows_.data() + (k - phi_) * phi_;
            std::int64_t top = prev[phi_ - 1];
            for (std::int64_t i = phi_; i-- > 0;) {
                std::int64_t v = (i == 0) ? 0 : prev[i - 1];
                if (top != 0) {
                    std::int64_t add;
                    if (__builtin_mul_overflow(top, r0[i], &add) ||
                        __builtin_add_overflow(v, add, &v))
                        throw budget_exceeded("reduction row overflow");
                }
                cur[i] = v;
            }
        }
        for (std::int64_t v : rows_) max_row_ = std::max(max_row_, std::abs(v));
        if (max_row_ > kRowMagnitudeCap)
            throw budget_exceeded("reduction rows exceed magnitude cap");
    }

    if (n_ == 1) {
        units_ = {0};
    } else {
        units_.reserve(static_cast<std::size_t>(phi_));
        for (std::int64_t x = 1; x < n_; ++x)
            if (std::gcd(x, n_) == 1) units_.push_back(x);
    }

    table_.resize(static_cast<std::size_t>(n_));
    for (std::int64_t k = 0; k < n_; ++k) {
        double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
        table_[static_cast<std::size_t>(k)] = {std::cos(t), std::sin(t)};
    }
}

std::shared_ptr<const CyclotomicRing> CyclotomicRing::get(std::int64_t n) {
    std::int64_t key = normalize_modulus(n);
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CyclotomicRing>> cache;
    static std::list<std::int64_t> order;  // most recent at front
    static std::size_t bytes = 0;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            order.remove(key);
            order.push_front(key);
            return it->second;
        }
    }
    auto ring = std::make_shared<const CyclotomicRing>(key);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, ring);
    if (inserted) {
        order.push_front(key);
        bytes += ring_bytes_estimate(ring->modulus(), ring->phi());
        // Evict idle contexts beyond the byte budget, oldest first.
        auto li = order.end();
        while (bytes > kRingCacheBytes && li != order.begin()) {
            --li;
            auto ci = cache.find(*li);
            if (*li != key && ci->second.use_count() == 1) {
                bytes -= ring_bytes_estimate(ci->second->modulus(), ci->second->phi());
                cache.erase(ci);
                li = order.erase(li);
            }
        }
    }
    return it->second;
}

void CyclotomicRing::accumulate(std::span<std::int64_t> acc, std::int64_t k,
                                std::int64_t c) const {
    if (c == 0) return;
    if (k < phi_) {
        acc[static_cast<std::size_t>(k)] += c;
        return;
    }
    const std::int64_t* r = rows_.data() + (k - phi_) * phi_;
    for (std::int64_t i = 0; i < phi_; ++i) acc[static_cast<std::size_t>(i)] += c * r[i];
}

void CyclotomicRing::accumulate(std::vector<BigInt>& acc, std::int64_t k,
                                const BigInt& c) const {
    if (c == 0) return;
    if (k < phi_) {
        acc[static_cast<std::size_t>(k)] += c;
        return;
    }
    const std::int64_t* r = rows_.data() + (k - phi_) * phi_;
    for (std::int64_t i = 0; i < phi_; ++i) {
        if (r[i] == 0) continue;
        if (r[i] > 0)
            mpz_addmul_ui(acc[static_cast<std::size_t>(i)].get_mpz_t(), c.get_mpz_t(),
                          static_cast<unsigned long>(r[i]));
        else
            mpz_submul_ui(acc[static_cast<std::size_t>(i)].get_mpz_t(), c.get_mpz_t(),
                          static_cast<unsigned long>(-r[i]));
    }
}

std::pair<std::int64_t, int> CyclotomicRing::embed_root(const RootOfUnity& r) const {
    std::int64_t n = r.order();
    if (n_ % normalize_modulus(n) != 0)
        throw invalid_argument("embed_root: root does not lie in this ring");
    if (n_ % n == 0) return {r.exponent() * (n_ / n), +1};
    // Otherwise n = 2m with m odd and m | N:
    // zeta_{2m}^e = -zeta_m^{e (m+1)/2} for odd e.
    std::int64_t m = n / 2;
    std::int64_t e = (r.exponent() % m) * (((m + 1) / 2) % m) % m;
    return {e * (n_ / m), -1};
}

bool CyclotomicRing::sparse_is_zero(
    std::span<const std::pair<std::int64_t, std::int64_t>> terms) const {
    std::vector<std::int64_t> acc(static_cast<std::size_t>(phi_), 0);
    for (const auto& [k, c] : terms) accumulate(acc, k, c);
    return std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; });
}

CycElement::CycElement() : ring_(CyclotomicRing::get(1)), coeffs_(1, BigInt(0)) {}

CycElement::CycElement(std::shared_ptr<const CyclotomicRing> ring,
                       std::vector<BigInt> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

CycElement CycElement::zero(std::int64_t n) {
    auto ring = CyclotomicRing::get(n);
    return CycElement(ring, std::vector<BigInt>(static_cast<std::size_t>(ring->phi()), BigInt(0)));
}

CycElement CycElement::from_integer(const BigInt& v) {
    auto ring = CyclotomicRing::get(1);
    return CycElement(ring, {v});
}

CycElement CycElement::from_root(const RootOfUnity& r) {
    return sum_to_element(SumOfRoots({r}));
}

bool CycElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const BigInt& v) { return v == 0; });
}

bool CycElement::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

BigInt CycElement::rational_value() const {
    if (!is_rational())
        throw invalid_argument("rational_value: element is not rational");
    return coeffs_[0];
}

CycElement CycElement::lifted_to(std::int64_t n) const {
    std::int64_t target = normalize_modulus(n);
    if (target == modulus()) return *this;
    if (target % modulus() != 0)
        throw invalid_argument("lifted_to: target modulus is not a multiple");
    auto ring = CyclotomicRing::get(target);
    std::int64_t stride = target / modulus();
    std::vector<BigInt> acc(static_cast<std::size_t>(ring->phi()), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        ring->accumulate(acc, static_cast<std::int64_t>(i) * stride, coeffs_[i]);
    return CycElement(std::move(ring), std::move(acc));
}

CycElement CycElement::operator+(const CycElement& o) const {
    std::int64_t l = lcm64(modulus(), o.modulus());
    CycElement a = lifted_to(l), b = o.lifted_to(l);
    std::vector<BigInt> v = a.coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.coeffs_[i];
    return CycElement(a.ring_, std::move(v));
}

CycElement CycElement::operator-(const CycElement& o) const {
    return *this + (-o);
}

CycElement CycElement::operator-() const {
    std::vector<BigInt> v = coeffs_;
    for (auto& c : v) c = -c;
    return CycElement(ring_, std::move(v));
}

CycElement CycElement::operator*(const CycElement& o) const {
    std::int64_t l = lcm64(modulus(), o.modulus());
    CycElement a = lifted_to(l), b = o.lifted_to(l);
    const auto& ring = a.ring_;
    std::int64_t n = ring->modulus();
    // Convolve onto exponents mod n (zeta^n = 1), then fold the tail rows.
    std::vector<BigInt> tmp(static_cast<std::size_t>(n), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            tmp[(i + j) % static_cast<std::size_t>(n)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    std::vector<BigInt> acc(static_cast<std::size_t>(ring->phi()), BigInt(0));
    for (std::int64_t k = 0; k < n; ++k) ring->accumulate(acc, k, tmp[static_cast<std::size_t>(k)]);
    return CycElement(ring, std::move(acc));
}

bool CycElement::operator==(const CycElement& o) const {
    std::int64_t l = lcm64(modulus(), o.modulus());
    if (l == modulus() && l == o.modulus()) return coeffs_ == o.coeffs_;
    return lifted_to(l).coeffs_ == o.lifted_to(l).coeffs_;
}

CycElement CycElement::galois(std::int64_t x) const {
    std::int64_t n = modulus();
    std::int64_t r = x % n;
    if (r < 0) r += n;
    if (n > 1 && std::gcd(r, n) != 1)
        throw invalid_argument("galois: not a unit mod the modulus");
    if (n == 1 || r == 1) return *this;
    std::vector<BigInt> acc(coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        ring_->accumulate(acc, static_cast<std::int64_t>(i) * r % n, coeffs_[i]);
    }
    return CycElement(ring_, std::move(acc));
}

std::complex<double> CycElement::numeric() const {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        s += coeffs_[i].get_d() * ring_->root_value(static_cast<std::int64_t>(i));
    }
    return s;
}

CycElement sum_to_element(const SumOfRoots& s) {
    auto ring = CyclotomicRing::get(s.base_modulus());
    std::vector<BigInt> acc(static_cast<std::size_t>(ring->phi()), BigInt(0));
    for (const auto& t : s.terms()) {
        auto [k, sign] = ring->embed_root(t);
        ring->accumulate(acc, k, BigInt(sign));
    }
    return CycElement(std::move(ring), std::move(acc));
}

bool sum_is_zero(const SumOfRoots& s) {
    if (s.empty()) return true;
    auto ring = CyclotomicRing::get(s.base_modulus());
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    terms.reserve(s.weight());
    for (const auto& t : s.terms()) {
        auto [k, sign] = ring->embed_root(t);
        terms.emplace_back(k, sign);
    }
    return ring->sparse_is_zero(terms);
}

} // namespace cyclo
