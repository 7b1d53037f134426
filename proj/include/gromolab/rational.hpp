#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace gromolab {

/// Reduced fraction over int64 with overflow-checked arithmetic. Used by the
/// exact-rational isometry mode, where relations must be decided exactly;
/// values leaving the 64-bit range raise resource_error instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    static Rational make(std::int64_t num, std::int64_t den);

    // accepts "p/q", integers, and plain decimals like "-0.25"
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool negative() const { return num_ < 0; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

private:
    std::int64_t num_;
    std::int64_t den_;  // > 0
};

}  // namespace gromolab
