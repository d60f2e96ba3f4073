#pragma once

#include "einl/errors.hpp"
#include "einl/rational.hpp"

#include <cstdint>
#include <string>

namespace einl {

/// Field of exact rationals. Stateless; exists so matrix code can be written
/// once against a field object.
struct RationalField {
    using Element = Rational;

    Element zero() const { return Rational(0); }
    Element one() const { return Rational(1); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element div(const Element& a, const Element& b) const { return a / b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const { return a.inverse(); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool eq(const Element& a, const Element& b) const { return a == b; }
    std::string to_string(const Element& a) const { return a.to_string(); }
    std::string name() const { return "Q"; }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Prime field F_p with residues stored as plain machine words in [0, p).
class PrimeField {
public:
    using Element = uint32_t;

    explicit PrimeField(uint32_t p) : p_(p) {
        if (!is_prime(p)) throw UsageError("PrimeField: modulus " + std::to_string(p) + " is not prime");
    }

    uint32_t modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    Element from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Element>(r);
    }
    Element add(Element a, Element b) const {
        uint64_t s = static_cast<uint64_t>(a) + b;
        return static_cast<Element>(s >= p_ ? s - p_ : s);
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>(static_cast<uint64_t>(a) * b % p_);
    }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const {
        if (a == 0) throw UsageError("PrimeField: inverse of zero");
        // Extended Euclid on (a, p).
        int64_t t = 0, new_t = 1;
        int64_t r = p_, new_r = a;
        while (new_r != 0) {
            int64_t q = r / new_r;
            int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Element>(t);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }
    std::string to_string(Element a) const { return std::to_string(a); }
    std::string name() const { return "F" + std::to_string(p_); }

    /// Smallest generator of the multiplicative group.
    Element primitive_root() const {
        if (p_ == 2) return 1;
        for (Element g = 2; g < p_; ++g) {
            Element x = g;
            uint32_t order = 1;
            while (x != 1) {
                x = mul(x, g);
                ++order;
            }
            if (order == p_ - 1) return g;
        }
        throw InvariantViolation("PrimeField: no primitive root found");
    }

    static bool is_prime(uint32_t n) {
        if (n < 2) return false;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    uint32_t p_;
};

} // namespace einl
