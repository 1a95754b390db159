#include "sympcalc/bigint.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace sympcalc {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m = v > 0 ? static_cast<unsigned long long>(v)
                                 : 0ull - static_cast<unsigned long long>(v);
    while (m) {
        mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
        m >>= 32;
    }
}

void BigInt::trim_() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_magnitude(const BigInt& a, const BigInt& b) {
    if (a.mag_.size() != b.mag_.size())
        return a.mag_.size() < b.mag_.size() ? -1 : 1;
    for (size_t i = a.mag_.size(); i-- > 0;)
        if (a.mag_[i] != b.mag_[i]) return a.mag_[i] < b.mag_[i] ? -1 : 1;
    return 0;
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = compare_magnitude(a, b);
    return a.sign_ >= 0 ? c : -c;
}

std::vector<uint32_t> BigInt::mag_add_(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r;
    r.reserve(big.size() + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < big.size(); ++i) {
        uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
}

std::vector<uint32_t> BigInt::mag_sub_(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow -
                    (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.push_back(static_cast<uint32_t>(s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mag_mul_(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        if (ai == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Knuth algorithm D with normalization.
void BigInt::mag_divmod_(const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q,
                         std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    if (a.size() < b.size()) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0];
        uint64_t rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    // Normalize so the divisor's top limb has its high bit set.
    int shift = 0;
    for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    const size_t n = b.size(), m = a.size() - n;
    std::vector<uint32_t> u(a.size() + 1, 0), v(n, 0);
    for (size_t i = a.size(); i-- > 0;) {
        u[i + 1] |= shift ? (a[i] >> (32 - shift)) : 0;
        u[i] = a[i] << shift;
    }
    if (shift == 0) {
        for (size_t i = 0; i < a.size(); ++i) u[i] = a[i];
        u[a.size()] = 0;
    }
    for (size_t i = n; i-- > 0;) {
        v[i] = b[i] << shift;
        if (shift && i > 0) v[i] |= b[i - 1] >> (32 - shift);
    }

    q.assign(m + 1, 0);
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / v[n - 1];
        uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        // Multiply-subtract qhat*v from u[j..j+n].
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u[i + j]) -
                        static_cast<int64_t>(p & 0xffffffffu) - borrow;
            if (t < 0) {
                t += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u[j + n]) -
                    static_cast<int64_t>(carry) - borrow;
        if (t < 0) {
            // qhat was one too large: add back.
            t += static_cast<int64_t>(kBase);
            u[j + n] = static_cast<uint32_t>(t);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
                c2 = s >> 32;
            }
            u[j + n] = static_cast<uint32_t>(u[j + n] + c2);
        } else {
            u[j + n] = static_cast<uint32_t>(t);
        }
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    // Denormalize remainder.
    r.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        r[i] = u[i] >> shift;
        if (shift && i + 1 < n + 1)
            r[i] |= static_cast<uint32_t>(static_cast<uint64_t>(u[i + 1])
                                          << (32 - shift));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.mag_ = BigInt::mag_add_(a.mag_, b.mag_);
    } else {
        int c = BigInt::compare_magnitude(a, b);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = a.sign_;
            r.mag_ = BigInt::mag_sub_(a.mag_, b.mag_);
        } else {
            r.sign_ = b.sign_;
            r.mag_ = BigInt::mag_sub_(b.mag_, a.mag_);
        }
    }
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_ = BigInt::mag_mul_(a.mag_, b.mag_);
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    std::vector<uint32_t> qm, rm;
    mag_divmod_(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool BigInt::fits_i64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    uint64_t m = (static_cast<uint64_t>(mag_[1]) << 32) | mag_[0];
    return sign_ > 0 ? m <= 0x7fffffffffffffffull : m <= 0x8000000000000000ull;
}

long long BigInt::to_i64() const {
    uint64_t m = 0;
    if (mag_.size() >= 1) m |= mag_[0];
    if (mag_.size() >= 2) m |= static_cast<uint64_t>(mag_[1]) << 32;
    return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

BigInt BigInt::from_string(std::string_view s) {
    BigInt r;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    const BigInt chunk_base(1000000000ll);
    while (i < s.size()) {
        size_t take = std::min<size_t>(9, s.size() - i);
        uint64_t v = 0;
        for (size_t k = 0; k < take; ++k, ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit");
            v = v * 10 + static_cast<uint64_t>(s[i] - '0');
        }
        BigInt scale = take == 9 ? chunk_base : BigInt(1);
        if (take != 9) {
            long long p = 1;
            for (size_t k = 0; k < take; ++k) p *= 10;
            scale = BigInt(p);
        }
        r = r * scale + BigInt(static_cast<long long>(v));
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> chunks;  // base 10^9, little-endian
    BigInt t = abs();
    const BigInt base(1000000000ll);
    while (!t.is_zero()) {
        BigInt q, r;
        divmod(t, base, q, r);
        chunks.push_back(r.mag_.empty() ? 0u : r.mag_[0]);
        t = std::move(q);
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    char buf[16];
    std::snprintf(buf, sizeof buf, "%u", chunks.back());
    out += buf;
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%09u", chunks[i]);
        out += buf;
    }
    return out;
}

}  // namespace sympcalc
