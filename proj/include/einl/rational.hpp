#pragma once

#include "einl/ints.hpp"

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace einl {

/// Exact rational number. Always reduced, denominator always positive.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {} // NOLINT: implicit by design
    Rational(int v) : num_(v), den_(1) {}       // NOLINT
    Rational(Int numerator, Int denominator);
    explicit Rational(Int v) : num_(std::move(v)), den_(1) {}

    /// Parses "p" or "p/q" with optional sign.
    static Rational from_string(std::string_view text);
    std::string to_string() const;

    const Int& numerator() const { return num_; }
    const Int& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == Int(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational inverse() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& v);

private:
    Int num_;
    Int den_;

    void reduce();
};

} // namespace einl
