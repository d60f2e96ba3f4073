#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace einl {

/// Signed integer of unbounded size.
///
/// Values that fit in a machine word stay in a machine word; arithmetic only
/// falls back to limb vectors when a result overflows. All results are kept
/// canonical, so equal values always have equal representations.
class Int {
public:
    Int() = default;
    Int(long long v) : small_(v) {} // NOLINT: implicit by design, mirrors integer literals
    Int(int v) : small_(v) {}       // NOLINT

    static Int from_string(std::string_view text);
    std::string to_string() const;

    bool is_small() const { return big_.empty(); }
    bool is_zero() const { return big_.empty() && small_ == 0; }
    /// -1, 0 or +1.
    int sign() const;
    bool is_negative() const { return sign() < 0; }

    /// Value as long long; caller must know it fits (true whenever is_small()).
    long long as_small() const { return small_; }

    Int operator-() const;
    Int abs() const;

    Int& operator+=(const Int& rhs);
    Int& operator-=(const Int& rhs);
    Int& operator*=(const Int& rhs);
    /// Truncated division (rounds toward zero, like C++ integer division).
    Int& operator/=(const Int& rhs);
    Int& operator%=(const Int& rhs);

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(Int a, const Int& b) { return a *= b; }
    friend Int operator/(Int a, const Int& b) { return a /= b; }
    friend Int operator%(Int a, const Int& b) { return a %= b; }

    /// Quotient and remainder of truncated division, in one pass.
    static void divmod(const Int& a, const Int& b, Int& q, Int& r);

    /// Non-negative greatest common divisor; gcd(0, 0) = 0.
    static Int gcd(Int a, Int b);

    friend bool operator==(const Int& a, const Int& b);
    friend std::strong_ordering operator<=>(const Int& a, const Int& b);

    friend std::ostream& operator<<(std::ostream& os, const Int& v);

private:
    // Canonical form: big_ empty means the value is small_; otherwise the value
    // is sign_ * big_ (base 2^32, little endian, no leading zero limb) and does
    // not fit in long long. small_/sign_ are meaningless in the other mode.
    long long small_ = 0;
    int sign_ = 0;
    std::vector<uint32_t> big_;

    void normalize();
    static std::vector<uint32_t> to_mag(unsigned long long v);
    std::vector<uint32_t> magnitude() const;
    void assign_mag(int sign, std::vector<uint32_t> mag);

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // Requires a >= b.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

} // namespace einl
