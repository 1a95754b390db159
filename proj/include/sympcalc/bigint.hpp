// Arbitrary-precision signed integers, base 2^32 limbs.
//
// Small and self-contained on purpose: the whole engine runs on exact
// rational arithmetic, so this type sits under every computation.  Only the
// operations the upper layers need are provided (ring arithmetic, divmod,
// gcd, decimal I/O).

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sympcalc {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    // -1, 0, +1 according to a <=> b.
    static int compare(const BigInt& a, const BigInt& b);
    static int compare_magnitude(const BigInt& a, const BigInt& b);

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const;

    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // Truncated division: quotient rounds toward zero, remainder keeps the
    // sign of the dividend, |r| < |b|.  b must be nonzero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    static BigInt gcd(BigInt a, BigInt b);  // always >= 0
    BigInt abs() const;

    bool operator==(const BigInt& b) const { return compare(*this, b) == 0; }
    bool operator!=(const BigInt& b) const { return compare(*this, b) != 0; }
    bool operator<(const BigInt& b) const { return compare(*this, b) < 0; }
    bool operator<=(const BigInt& b) const { return compare(*this, b) <= 0; }
    bool operator>(const BigInt& b) const { return compare(*this, b) > 0; }
    bool operator>=(const BigInt& b) const { return compare(*this, b) >= 0; }

    std::string to_string() const;

    bool fits_i64() const;
    long long to_i64() const;  // requires fits_i64()

    size_t limb_count() const { return mag_.size(); }

private:
    // sign_ in {-1,0,+1}; mag_ little-endian, no leading zero limbs,
    // empty iff sign_ == 0.
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void trim_();
    static std::vector<uint32_t> mag_add_(const std::vector<uint32_t>& a,
                                          const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> mag_sub_(const std::vector<uint32_t>& a,
                                          const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mag_mul_(const std::vector<uint32_t>& a,
                                          const std::vector<uint32_t>& b);
    static void mag_divmod_(const std::vector<uint32_t>& a,
                            const std::vector<uint32_t>& b,
                            std::vector<uint32_t>& q,
                            std::vector<uint32_t>& r);
};

}  // namespace sympcalc
