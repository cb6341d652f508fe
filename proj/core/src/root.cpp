#include "cyclo/root.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cyclo/errors.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

RootOfUnity RootOfUnity::make(std::int64_t n, std::int64_t e) {
    if (n < 1) throw invalid_argument("root of unity: order must be positive");
    e %= n;
    if (e < 0) e += n;
    if (e == 0) return RootOfUnity(1, 0);
    std::int64_t g = std::gcd(e, n);
    return RootOfUnity(n / g, e / g);
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    std::int64_t l = lcm64(order_, o.order_);
    // e/n + f/m over a common denominator l.
    std::int64_t e = exponent_ * (l / order_) + o.exponent_ * (l / o.order_);
    return make(l, e);
}

RootOfUnity RootOfUnity::inverse() const {
    return make(order_, order_ - exponent_);
}

RootOfUnity RootOfUnity::negated() const {
    return *this * RootOfUnity::make(2, 1);
}

RootOfUnity RootOfUnity::galois(std::int64_t x) const {
    std::int64_t r = x % order_;
    if (r < 0) r += order_;
    if (std::gcd(r, order_) != 1 && order_ > 1)
        throw invalid_argument("galois: exponent multiplier is not a unit");
    return make(order_, exponent_ * r);
}

std::complex<double> RootOfUnity::value() const {
    double t = 2.0 * std::numbers::pi * static_cast<double>(exponent_) /
               static_cast<double>(order_);
    return {std::cos(t), std::sin(t)};
}

std::string RootOfUnity::to_string() const {
    std::ostringstream os;
    os << exponent_ << "/" << order_;
    return os.str();
}

SumOfRoots::SumOfRoots(std::vector<RootOfUnity> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end());
}

void SumOfRoots::add_term(const RootOfUnity& r) {
    terms_.insert(std::upper_bound(terms_.begin(), terms_.end(), r), r);
}

std::int64_t SumOfRoots::base_modulus() const {
    std::int64_t l = 1;
    for (const auto& t : terms_) l = lcm64(l, t.order());
    return l;
}

SumOfRoots SumOfRoots::disjoint_union(const SumOfRoots& o) const {
    std::vector<RootOfUnity> v = terms_;
    v.insert(v.end(), o.terms_.begin(), o.terms_.end());
    return SumOfRoots(std::move(v));
}

SumOfRoots SumOfRoots::rotated(const RootOfUnity& eps) const {
    std::vector<RootOfUnity> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back(t * eps);
    return SumOfRoots(std::move(v));
}

SumOfRoots SumOfRoots::galois(std::int64_t x) const {
    std::int64_t n = base_modulus();
    std::int64_t r = x % n;
    if (r < 0) r += n;
    if (n > 1 && std::gcd(r, n) != 1)
        throw invalid_argument("galois: not a unit mod the base modulus");
    std::vector<RootOfUnity> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back(t.galois(r));
    return SumOfRoots(std::move(v));
}

std::complex<double> SumOfRoots::value() const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& t : terms_) s += t.value();
    return s;
}

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
}

std::int64_t parse_int(std::string_view& s, const char* what) {
    skip_ws(s);
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + i, v);
    if (res.ec != std::errc() || res.ptr == s.data())
        throw invalid_argument(std::string("sum grammar: expected ") + what);
    s.remove_prefix(static_cast<std::size_t>(res.ptr - s.data()));
    return v;
}

} // namespace

// term := ['-'] [mult '*'] exponent '/' order
SumOfRoots SumOfRoots::parse(std::string_view text) {
    std::vector<RootOfUnity> terms;
    std::string_view s = text;
    skip_ws(s);
    if (s.empty()) return SumOfRoots();  // empty sum (weight 0)
    while (true) {
        skip_ws(s);
        bool neg = false;
        if (!s.empty() && s.front() == '-') {
            neg = true;
            s.remove_prefix(1);
        }
        std::int64_t first = parse_int(s, "integer");
        skip_ws(s);
        std::int64_t mult = 1, e = first;
        if (!s.empty() && s.front() == '*') {
            s.remove_prefix(1);
            if (first <= 0)
                throw invalid_argument("sum grammar: multiplicity must be positive");
            mult = first;
            e = parse_int(s, "exponent");
            skip_ws(s);
        }
        if (s.empty() || s.front() != '/')
            throw invalid_argument("sum grammar: expected '/'");
        s.remove_prefix(1);
        std::int64_t n = parse_int(s, "order");
        RootOfUnity r = RootOfUnity::make(n, e);
        if (neg) r = r.negated();
        for (std::int64_t i = 0; i < mult; ++i) terms.push_back(r);
        skip_ws(s);
        if (s.empty()) break;
        if (s.front() != ',')
            throw invalid_argument("sum grammar: expected ','");
        s.remove_prefix(1);
    }
    return SumOfRoots(std::move(terms));
}

std::string SumOfRoots::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i;
        while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
        if (i > 0) os << ", ";
        if (j - i > 1) os << (j - i) << "*";
        os << terms_[i].to_string();
        i = j;
    }
    return os.str();
}

} // namespace cyclo
