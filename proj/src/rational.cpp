#include "gromolab/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

#include "gromolab/common.hpp"

namespace gromolab {
namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw resource_error("exact-rational overflow: value left the 64-bit range");
    return static_cast<std::int64_t>(v);
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational from128(i128 num, i128 den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational::make(narrow(num), narrow(den));
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    Rational r;
    r.num_ = g ? num / g : 0;
    r.den_ = g ? den / g : 1;
    return r;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw domain_error("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        errno = 0;
        char* end = nullptr;
        long long p = std::strtoll(text.c_str(), &end, 10);
        if (errno || end != text.c_str() + slash) throw domain_error("bad rational literal: " + text);
        long long q = std::strtoll(text.c_str() + slash + 1, &end, 10);
        if (errno || *end != '\0') throw domain_error("bad rational literal: " + text);
        return make(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        errno = 0;
        char* end = nullptr;
        long long p = std::strtoll(text.c_str(), &end, 10);
        if (errno || *end != '\0') throw domain_error("bad integer literal: " + text);
        return Rational(p);
    }
    // decimal: digits.digits -> mantissa / 10^k
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac = text.size() - dot - 1;
    if (frac > 18) throw domain_error("decimal literal too long for exact mode: " + text);
    errno = 0;
    char* end = nullptr;
    long long p = std::strtoll(digits.c_str(), &end, 10);
    if (errno || *end != '\0') throw domain_error("bad decimal literal: " + text);
    i128 q = 1;
    for (std::size_t i = 0; i < frac; ++i) q *= 10;
    return from128(p, q);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return from128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return from128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return from128(i128(num_) * o.num_, i128(den_) * o.den_);
}

}  // namespace gromolab
