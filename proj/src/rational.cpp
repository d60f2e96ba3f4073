#include "einl/rational.hpp"

#include "einl/errors.hpp"

#include <ostream>

namespace einl {

Rational::Rational(Int numerator, Int denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw UsageError("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = Int(1);
        return;
    }
    Int g = Int::gcd(num_, den_);
    if (!(g == Int(1))) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational Rational::inverse() const {
    if (is_zero()) throw UsageError("Rational: inverse of zero");
    Rational out;
    out.num_ = den_;
    out.den_ = num_;
    if (out.den_.sign() < 0) {
        out.num_ = -out.num_;
        out.den_ = -out.den_;
    }
    return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw UsageError("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    reduce();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Denominators are positive, so cross multiplication preserves order.
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

Rational Rational::from_string(std::string_view text) {
    const size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(Int::from_string(text));
    Int num = Int::from_string(text.substr(0, slash));
    Int den = Int::from_string(text.substr(slash + 1));
    if (den.is_zero()) throw ParseError("Rational: zero denominator");
    return Rational(std::move(num), std::move(den));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) {
    return os << v.to_string();
}

} // namespace einl
