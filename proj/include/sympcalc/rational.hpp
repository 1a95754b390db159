// Exact rationals over BigInt, always stored reduced with positive
// denominator.

#pragma once

#include <string>
#include <string_view>

#include "sympcalc/bigint.hpp"

namespace sympcalc {

class Rational {
public:
    Rational() = default;
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize_(); }
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        normalize_();
    }

    // Accepts "n" or "n/d" with optional sign.
    static Rational from_string(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    bool is_negative() const { return num_.is_negative(); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    Rational inverse() const;
    Rational abs() const { return is_negative() ? -*this : *this; }

    bool operator==(const Rational& b) const {
        return num_ == b.num_ && den_ == b.den_;
    }
    bool operator!=(const Rational& b) const { return !(*this == b); }
    bool operator<(const Rational& b) const;
    bool operator>(const Rational& b) const { return b < *this; }
    bool operator<=(const Rational& b) const { return !(b < *this); }
    bool operator>=(const Rational& b) const { return !(*this < b); }

    std::string to_string() const;

private:
    BigInt num_ = BigInt(0);
    BigInt den_ = BigInt(1);

    void normalize_();
};

}  // namespace sympcalc
