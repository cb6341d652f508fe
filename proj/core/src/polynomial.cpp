#include "cyclo/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "cyclo/errors.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs)
    : coeffs_(std::move(coeffs)) {
    trim();
}

IntPolynomial IntPolynomial::monomial(std::size_t d, BigInt c) {
    std::vector<BigInt> v(d + 1, BigInt(0));
    v[d] = std::move(c);
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] -= o.coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& o) const {
    if (o.is_zero()) throw invalid_argument("divide_exact: division by zero");
    if (is_zero()) return IntPolynomial();
    if (degree() < o.degree())
        throw verification_error("divide_exact: not divisible (degree)");

    std::vector<BigInt> rem = coeffs_;
    std::size_t dq = coeffs_.size() - o.coeffs_.size();
    std::vector<BigInt> q(dq + 1, BigInt(0));
    const auto& d = o.coeffs_;
    for (std::size_t k = dq + 1; k-- > 0;) {
        BigInt& top = rem[k + d.size() - 1];
        if (top % o.leading() != 0)
            throw verification_error("divide_exact: not divisible (leading)");
        BigInt c = top / o.leading();
        q[k] = c;
        if (c != 0) {
            for (std::size_t i = 0; i < d.size(); ++i)
                rem[k + i] -= c * d[i];
        }
    }
    for (const BigInt& r : rem)
        if (r != 0) throw verification_error("divide_exact: nonzero remainder");
    return IntPolynomial(std::move(q));
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        BigInt c = coeffs_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

const IntPolynomial& cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) throw invalid_argument("cyclotomic_polynomial: n must be >= 1");
    static std::mutex mu;
    static std::map<std::int64_t, IntPolynomial> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // x^n - 1 = prod_{d | n} Phi_d, so Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
    // Every divisor of a divisor of n divides n, so filling the cache over
    // the divisors of n in ascending order needs no recursion.
    for (std::int64_t m : divisors(n)) {
        if (cache.count(m)) continue;
        std::vector<BigInt> xm(static_cast<std::size_t>(m) + 1, BigInt(0));
        xm[0] = -1;
        xm[static_cast<std::size_t>(m)] = 1;
        IntPolynomial acc{std::move(xm)};
        for (std::int64_t d : divisors(m)) {
            if (d != m) acc = acc.divide_exact(cache.at(d));
        }
        cache.emplace(m, std::move(acc));
    }
    return cache.at(n);
}

} // namespace cyclo
