#include "einl/ints.hpp"

#include "einl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>

namespace einl {

namespace {

constexpr unsigned long long kBase = 1ull << 32;

bool add_overflows(long long a, long long b, long long& out) {
    return __builtin_add_overflow(a, b, &out);
}
bool sub_overflows(long long a, long long b, long long& out) {
    return __builtin_sub_overflow(a, b, &out);
}
bool mul_overflows(long long a, long long b, long long& out) {
    return __builtin_mul_overflow(a, b, &out);
}

} // namespace

int Int::sign() const {
    if (!big_.empty()) return sign_;
    return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
}

std::vector<uint32_t> Int::to_mag(unsigned long long v) {
    std::vector<uint32_t> mag;
    while (v != 0) {
        mag.push_back(static_cast<uint32_t>(v & 0xffffffffull));
        v >>= 32;
    }
    return mag;
}

std::vector<uint32_t> Int::magnitude() const {
    if (!big_.empty()) return big_;
    unsigned long long v = small_ < 0
        ? ~static_cast<unsigned long long>(small_) + 1ull
        : static_cast<unsigned long long>(small_);
    return to_mag(v);
}

void Int::assign_mag(int sign, std::vector<uint32_t> mag) {
    while (!mag.empty() && mag.back() == 0) mag.pop_back();
    if (mag.empty()) sign = 0;
    big_ = std::move(mag);
    sign_ = sign;
    small_ = 0;
    normalize();
}

void Int::normalize() {
    if (big_.empty()) return;
    if (big_.size() > 2) return;
    unsigned long long v = big_[0];
    if (big_.size() == 2) v |= static_cast<unsigned long long>(big_[1]) << 32;
    if (sign_ >= 0) {
        if (v <= static_cast<unsigned long long>(std::numeric_limits<long long>::max())) {
            small_ = static_cast<long long>(v);
            big_.clear();
            sign_ = 0;
        }
    } else {
        // |LLONG_MIN| = 2^63.
        if (v <= (1ull << 63)) {
            small_ = (v == (1ull << 63)) ? std::numeric_limits<long long>::min()
                                         : -static_cast<long long>(v);
            big_.clear();
            sign_ = 0;
        }
    }
}

int Int::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> Int::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> out;
    out.reserve(hi.size() + 1);
    unsigned long long carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        unsigned long long s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        out.push_back(static_cast<uint32_t>(s & 0xffffffffull));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<uint32_t>(carry));
    return out;
}

std::vector<uint32_t> Int::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size());
    long long borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        long long d = static_cast<long long>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (d < 0) {
            d += static_cast<long long>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<uint32_t>(d));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> Int::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        unsigned long long carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            unsigned long long cur = static_cast<unsigned long long>(a[i]) * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            unsigned long long cur = out[k] + carry;
            out[k] = static_cast<uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Schoolbook long division, quotient digit estimation per Knuth vol. 2, 4.3.1.
void Int::divmod_mag(const std::vector<uint32_t>& u_in, const std::vector<uint32_t>& v_in,
                     std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (v_in.empty()) throw UsageError("Int: division by zero");
    if (cmp_mag(u_in, v_in) < 0) {
        r = u_in;
        return;
    }
    if (v_in.size() == 1) {
        unsigned long long d = v_in[0];
        q.assign(u_in.size(), 0);
        unsigned long long rem = 0;
        for (size_t i = u_in.size(); i-- > 0;) {
            unsigned long long cur = (rem << 32) | u_in[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    const int shift = __builtin_clz(v_in.back());
    const size_t n = v_in.size();
    std::vector<uint32_t> v(n);
    for (size_t i = n; i-- > 0;) {
        v[i] = v_in[i] << shift;
        if (shift && i > 0) v[i] |= static_cast<uint32_t>(v_in[i - 1] >> (32 - shift));
    }
    std::vector<uint32_t> u(u_in.size() + 1, 0);
    for (size_t i = u_in.size(); i-- > 0;) {
        unsigned long long cur = static_cast<unsigned long long>(u_in[i]) << shift;
        u[i] |= static_cast<uint32_t>(cur & 0xffffffffull);
        u[i + 1] |= static_cast<uint32_t>(cur >> 32);
    }

    const size_t m = u_in.size() - n;
    q.assign(m + 1, 0);
    const unsigned long long vtop = v[n - 1];
    const unsigned long long vnext = v[n - 2];
    for (size_t j = m + 1; j-- > 0;) {
        unsigned long long numer = (static_cast<unsigned long long>(u[j + n]) << 32) | u[j + n - 1];
        unsigned long long qhat = numer / vtop;
        unsigned long long rhat = numer % vtop;
        if (qhat > 0xffffffffull) {
            rhat += vtop * (qhat - 0xffffffffull);
            qhat = 0xffffffffull;
        }
        while (rhat <= 0xffffffffull && qhat * vnext > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // Multiply-subtract qhat * v from u[j .. j+n].
        long long borrow = 0;
        unsigned long long carry = 0;
        for (size_t i = 0; i < n; ++i) {
            unsigned long long prod = qhat * v[i] + carry;
            carry = prod >> 32;
            long long d = static_cast<long long>(u[i + j]) - borrow - static_cast<long long>(prod & 0xffffffffull);
            if (d < 0) {
                d += static_cast<long long>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<uint32_t>(d);
        }
        long long d = static_cast<long long>(u[j + n]) - borrow - static_cast<long long>(carry);
        if (d < 0) {
            // qhat was one too large; add v back once.
            d += static_cast<long long>(kBase);
            --qhat;
            unsigned long long c = 0;
            for (size_t i = 0; i < n; ++i) {
                unsigned long long s = static_cast<unsigned long long>(u[i + j]) + v[i] + c;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffull);
                c = s >> 32;
            }
            d += static_cast<long long>(c);
            d &= static_cast<long long>(kBase) - 1;
        }
        u[j + n] = static_cast<uint32_t>(d);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();

    // Denormalize the remainder.
    r.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        r[i] = u[i] >> shift;
        if (shift && i + 1 < u.size()) r[i] |= static_cast<uint32_t>(static_cast<unsigned long long>(u[i + 1]) << (32 - shift));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

Int Int::operator-() const {
    Int out = *this;
    if (out.big_.empty()) {
        if (out.small_ == std::numeric_limits<long long>::min()) {
            out.assign_mag(1, to_mag(1ull << 63));
        } else {
            out.small_ = -out.small_;
        }
    } else {
        out.sign_ = -out.sign_;
        out.normalize();
    }
    return out;
}

Int Int::abs() const {
    return sign() < 0 ? -*this : *this;
}

Int& Int::operator+=(const Int& rhs) {
    if (big_.empty() && rhs.big_.empty()) {
        long long out;
        if (!add_overflows(small_, rhs.small_, out)) {
            small_ = out;
            return *this;
        }
    }
    const int sa = sign();
    const int sb = rhs.sign();
    if (sa == 0) return *this = rhs;
    if (sb == 0) return *this;
    auto ma = magnitude();
    auto mb = rhs.magnitude();
    if (sa == sb) {
        assign_mag(sa, add_mag(ma, mb));
    } else {
        const int c = cmp_mag(ma, mb);
        if (c == 0) {
            *this = Int();
        } else if (c > 0) {
            assign_mag(sa, sub_mag(ma, mb));
        } else {
            assign_mag(sb, sub_mag(mb, ma));
        }
    }
    return *this;
}

Int& Int::operator-=(const Int& rhs) {
    if (big_.empty() && rhs.big_.empty()) {
        long long out;
        if (!sub_overflows(small_, rhs.small_, out)) {
            small_ = out;
            return *this;
        }
    }
    return *this += -rhs;
}

Int& Int::operator*=(const Int& rhs) {
    if (big_.empty() && rhs.big_.empty()) {
        long long out;
        if (!mul_overflows(small_, rhs.small_, out)) {
            small_ = out;
            return *this;
        }
    }
    const int s = sign() * rhs.sign();
    if (s == 0) return *this = Int();
    assign_mag(s, mul_mag(magnitude(), rhs.magnitude()));
    return *this;
}

void Int::divmod(const Int& a, const Int& b, Int& q, Int& r) {
    if (b.is_zero()) throw UsageError("Int: division by zero");
    if (a.big_.empty() && b.big_.empty()) {
        // LLONG_MIN / -1 is the single small/small case that overflows.
        if (!(a.small_ == std::numeric_limits<long long>::min() && b.small_ == -1)) {
            q = Int(a.small_ / b.small_);
            r = Int(a.small_ % b.small_);
            return;
        }
    }
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.magnitude(), b.magnitude(), qm, rm);
    const int sa = a.sign();
    const int sb = b.sign();
    Int qv, rv;
    qv.assign_mag(sa * sb, std::move(qm));
    rv.assign_mag(sa, std::move(rm));
    q = std::move(qv);
    r = std::move(rv);
}

Int& Int::operator/=(const Int& rhs) {
    Int q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(q);
}

Int& Int::operator%=(const Int& rhs) {
    Int q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(r);
}

Int Int::gcd(Int a, Int b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        Int q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool operator==(const Int& a, const Int& b) {
    if (a.big_.empty() != b.big_.empty()) return false;
    if (a.big_.empty()) return a.small_ == b.small_;
    return a.sign_ == b.sign_ && a.big_ == b.big_;
}

std::strong_ordering operator<=>(const Int& a, const Int& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (a.big_.empty() && b.big_.empty()) return a.small_ <=> b.small_;
    const int c = Int::cmp_mag(a.magnitude(), b.magnitude());
    const int signed_c = sa < 0 ? -c : c;
    return signed_c <=> 0;
}

Int Int::from_string(std::string_view text) {
    size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) throw ParseError("Int: empty numeral");
    Int out;
    const Int ten(10);
    for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError(std::string("Int: invalid digit '") + text[pos] + "'");
        out *= ten;
        out += Int(text[pos] - '0');
    }
    return neg ? -out : out;
}

std::string Int::to_string() const {
    if (big_.empty()) return std::to_string(small_);
    std::string digits;
    std::vector<uint32_t> mag = big_;
    const std::vector<uint32_t> billion = {1000000000u};
    std::vector<uint32_t> q, r;
    while (!mag.empty()) {
        divmod_mag(mag, billion, q, r);
        unsigned long long chunk = r.empty() ? 0 : r[0];
        mag = q;
        std::string part = std::to_string(chunk);
        if (!mag.empty()) part.insert(0, 9 - part.size(), '0');
        digits.insert(0, part);
    }
    if (digits.empty()) digits = "0";
    if (sign_ < 0) digits.insert(0, 1, '-');
    return digits;
}

std::ostream& operator<<(std::ostream& os, const Int& v) {
    return os << v.to_string();
}

} // namespace einl
