#include "cyclo/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>

#include "cyclo/errors.hpp"

namespace cyclo {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = std::gcd(a, b);
    std::int64_t q = a / g;
    if (q > (std::numeric_limits<std::int64_t>::max)() / b)
        throw budget_exceeded("lcm overflows 64 bits");
    return q * b;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(
        static_cast<__int128>(a) * b % m);
}

std::int64_t pow_mod(std::int64_t a, std::uint64_t e, std::int64_t m) {
    a %= m;
    if (a < 0) a += m;
    std::int64_t r = 1 % m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

// Extended gcd: returns g and x with a*x = g (mod b0's module context).
std::int64_t ext_gcd(std::int64_t a, std::int64_t b,
                     std::int64_t& x, std::int64_t& y) {
    x = 1; y = 0;
    std::int64_t x1 = 0, y1 = 1;
    while (b) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = x - q * x1; x = x1; x1 = t;
        t = y - q * y1; y = y1; y1 = t;
    }
    return a;
}

} // namespace

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    if (m <= 0) throw invalid_argument("inv_mod: modulus must be positive");
    if (m == 1) return 0;
    a %= m;
    if (a < 0) a += m;
    std::int64_t x, y;
    std::int64_t g = ext_gcd(a, m, x, y);
    if (g != 1) throw invalid_argument("inv_mod: not a unit");
    x %= m;
    if (x < 0) x += m;
    return x;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = pow_mod(a, static_cast<std::uint64_t>(d), n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::int64_t> primes_upto(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!composite[static_cast<std::size_t>(i)]) {
            out.push_back(i);
            for (std::int64_t j = i * i; j <= n; j += i)
                composite[static_cast<std::size_t>(j)] = true;
        }
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n <= 0) throw invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = out.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt primorial(std::int64_t k) {
    BigInt r = 1;
    for (std::int64_t p : primes_upto(k)) r *= p;
    return r;
}

std::int64_t primorial64(std::int64_t k) {
    BigInt r = primorial(k);
    if (!fits_int64(r)) throw budget_exceeded("primorial overflows 64 bits");
    return static_cast<std::int64_t>(r.get_si());
}

double chebyshev_theta(std::int64_t k) {
    double s = 0.0;
    for (std::int64_t p : primes_upto(k)) s += std::log(static_cast<double>(p));
    return s;
}

std::int64_t primitive_root(std::int64_t p) {
    if (!is_prime(p)) throw invalid_argument("primitive_root: p must be prime");
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac) {
            if (pow_mod(g, static_cast<std::uint64_t>((p - 1) / q), p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw verification_error("primitive_root: none found");
}

std::int64_t crt_lift(const std::vector<std::int64_t>& moduli,
                      const std::vector<std::int64_t>& residues) {
    if (moduli.size() != residues.size() || moduli.empty())
        throw invalid_argument("crt_lift: moduli/residues size mismatch");
    std::int64_t mod = 1;
    std::int64_t x = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        std::int64_t m = moduli[i];
        if (m <= 0) throw invalid_argument("crt_lift: moduli must be positive");
        std::int64_t r = residues[i] % m;
        if (r < 0) r += m;
        if (m > 1 && std::gcd(r, m) != 1)
            throw invalid_argument("crt_lift: residue is not a unit");
        if (std::gcd(mod, m) != 1)
            throw invalid_argument("crt_lift: moduli are not pairwise coprime");
        // x' = x mod `mod`, x' = r mod m
        std::int64_t inv = inv_mod(mod % m, m);
        std::int64_t t = mul_mod((r - x % m + m) % m, inv, m);
        if (mod > (std::numeric_limits<std::int64_t>::max)() / m)
            throw budget_exceeded("crt_lift: product of moduli overflows");
        x += mod * t;
        mod *= m;
    }
    x %= mod;
    if (x < 0) x += mod;
    return x;
}

} // namespace cyclo
