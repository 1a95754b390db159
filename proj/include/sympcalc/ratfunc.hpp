// Rational functions num/den over Poly, kept in canonical form: den != 0,
// gcd(num, den) = 1, den monic in the graded-lex leading coefficient.  A zero
// value is always stored as 0/1, so is_zero() is a plain numerator test --
// the verdict primitive every identity check in the engine reduces to.

#pragma once

#include <string>

#include "sympcalc/poly.hpp"

namespace sympcalc {

class RatFunc {
public:
    explicit RatFunc(VarsPtr vars)
        : num_(Poly(vars)), den_(Poly(std::move(vars), Rational(1))) {}
    RatFunc(Poly num, Poly den);
    explicit RatFunc(Poly num);

    static RatFunc constant(VarsPtr vars, const Rational& c) {
        return RatFunc(Poly(std::move(vars), c));
    }
    static RatFunc variable(VarsPtr vars, int index) {
        return RatFunc(Poly::variable(std::move(vars), index));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarsPtr& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    Rational constant_value() const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const;

    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    RatFunc& operator/=(const RatFunc& b) { *this = *this / b; return *this; }

    RatFunc scaled(const Rational& c) const;

    RatFunc partial(int var) const;
    RatFunc partial(const std::string& var_name) const;

    // Exact evaluation; throws when the denominator vanishes at the point.
    Rational evaluate(const std::vector<Rational>& point) const;

    bool operator==(const RatFunc& b) const {
        return num_ == b.num_ && den_ == b.den_;
    }
    bool operator!=(const RatFunc& b) const { return !(*this == b); }

    std::string to_string() const;

    // Trusted constructor for already-reduced pairs (gcd 1, den monic).
    static RatFunc from_reduced(Poly num, Poly den);

private:
    Poly num_, den_;

    void reduce_();
};

// Accumulator for sums of products of rational functions that defers all
// reduction to a single final gcd.  Denominators in one accumulation chain
// are usually powers of a common factor, so the lcm updates stay exact
// divisions.
class RFAccum {
public:
    explicit RFAccum(const VarsPtr& vars)
        : num_(vars), den_(vars, Rational(1)) {}

    void add(const RatFunc& r) { add_raw_(r.num(), r.den()); }
    void sub(const RatFunc& r) { add_raw_(-r.num(), r.den()); }
    void add_product(const RatFunc& x, const RatFunc& y);
    void sub_product(const RatFunc& x, const RatFunc& y);
    void add_product(const RatFunc& x, const RatFunc& y, const RatFunc& z);
    void sub_product(const RatFunc& x, const RatFunc& y, const RatFunc& z);

    bool is_zero_so_far() const { return num_.is_zero(); }
    RatFunc result() const;

private:
    Poly num_, den_;

    void add_raw_(Poly n, const Poly& d);
};

}  // namespace sympcalc
