#include "sympcalc/ratfunc.hpp"

#include <stdexcept>

namespace sympcalc {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(num_.vars(), Rational(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!same_vars(num_.vars(), den_.vars()))
        throw std::invalid_argument("RatFunc: variable set mismatch");
    if (den_.is_zero())
        throw std::domain_error("RatFunc: division by the zero polynomial");
    reduce_();
}

void RatFunc::reduce_() {
    if (num_.is_zero()) {
        den_ = Poly(num_.vars(), Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_constant()) {
            Poly qn(num_.vars()), qd(num_.vars());
            if (!num_.divide_exact(g, qn) || !den_.divide_exact(g, qd))
                throw std::logic_error("RatFunc: reduction division failed");
            num_ = std::move(qn);
            den_ = std::move(qd);
        }
    }
    // Normalize the denominator to leading coefficient 1.
    const Rational& lc = den_.leading_coeff();
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational RatFunc::constant_value() const {
    if (!den_.is_one())
        throw std::logic_error("RatFunc: not a constant");
    return num_.constant_value();
}

namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
    Poly q(a.vars());
    if (!a.divide_exact(b, q))
        throw std::logic_error("RatFunc: expected exact division");
    return q;
}

// num/den with gcd(num, den) = 1 guaranteed by the caller; only normalizes
// the leading coefficient of the denominator.
RatFunc make_reduced(Poly num, Poly den) {
    if (num.is_zero()) return RatFunc(num.vars());
    const Rational& lc = den.leading_coeff();
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    return RatFunc::from_reduced(std::move(num), std::move(den));
}

}  // namespace

RatFunc RatFunc::from_reduced(Poly num, Poly den) {
    RatFunc r(num.vars());
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

// Sum with the denominator-gcd split: with g = gcd(d1, d2), d_i = g e_i, the
// candidate numerator n1 e2 + n2 e1 can only share a factor with g, so one
// small gcd finishes the reduction.
RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) {
        Poly num = a.num_ + b.num_;
        if (num.is_zero()) return RatFunc(a.vars());
        Poly g = Poly::gcd(num, a.den_);
        if (g.is_constant()) return make_reduced(std::move(num), a.den_);
        return make_reduced(exact_quotient(num, g), exact_quotient(a.den_, g));
    }
    Poly g = Poly::gcd(a.den_, b.den_);
    if (g.is_constant()) {
        Poly num = a.num_ * b.den_ + b.num_ * a.den_;
        return make_reduced(std::move(num), a.den_ * b.den_);
    }
    Poly e1 = exact_quotient(a.den_, g);
    Poly e2 = exact_quotient(b.den_, g);
    Poly num = a.num_ * e2 + b.num_ * e1;
    if (num.is_zero()) return RatFunc(a.vars());
    Poly h = Poly::gcd(num, g);
    if (h.is_constant()) return make_reduced(std::move(num), (g * e1) * e2);
    return make_reduced(exact_quotient(num, h),
                        (exact_quotient(g, h) * e1) * e2);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) return a;
    return a + (-b);
}

// Product with cross-cancellation: numerators are coprime to their own
// denominators, so after the two cross gcds the result is already reduced.
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
    Poly g1 = Poly::gcd(a.num_, b.den_);
    Poly g2 = Poly::gcd(b.num_, a.den_);
    Poly num = (g1.is_constant() ? a.num_ : exact_quotient(a.num_, g1)) *
               (g2.is_constant() ? b.num_ : exact_quotient(b.num_, g2));
    Poly den = (g2.is_constant() ? a.den_ : exact_quotient(a.den_, g2)) *
               (g1.is_constant() ? b.den_ : exact_quotient(b.den_, g1));
    return make_reduced(std::move(num), std::move(den));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero())
        throw std::domain_error("RatFunc: division by the zero polynomial");
    if (a.is_zero()) return a;
    Poly g1 = Poly::gcd(a.num_, b.num_);
    Poly g2 = Poly::gcd(b.den_, a.den_);
    Poly num = (g1.is_constant() ? a.num_ : exact_quotient(a.num_, g1)) *
               (g2.is_constant() ? b.den_ : exact_quotient(b.den_, g2));
    Poly den = (g2.is_constant() ? a.den_ : exact_quotient(a.den_, g2)) *
               (g1.is_constant() ? b.num_ : exact_quotient(b.num_, g1));
    return make_reduced(std::move(num), std::move(den));
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::scaled(const Rational& c) const {
    if (c.is_zero()) return RatFunc(vars());
    RatFunc r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
}

RatFunc RatFunc::partial(int var) const {
    // (n/d)' = (n'd - nd')/d^2
    Poly dn = num_.partial(var);
    if (den_.is_one()) return RatFunc(std::move(dn));
    Poly dd = den_.partial(var);
    return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

RatFunc RatFunc::partial(const std::string& var_name) const {
    int idx = vars()->index_of(var_name);
    if (idx < 0)
        throw std::invalid_argument("RatFunc: unknown variable '" + var_name + "'");
    return partial(idx);
}

Rational RatFunc::evaluate(const std::vector<Rational>& point) const {
    Rational d = den_.evaluate(point);
    if (d.is_zero())
        throw std::domain_error("RatFunc: denominator vanishes at point");
    return num_.evaluate(point) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

void RFAccum::add_raw_(Poly n, const Poly& d) {
    if (n.is_zero()) return;
    if (den_ == d) {
        num_ += n;
        return;
    }
    Poly q(num_.vars());
    if (d.is_one()) {
        num_ += n * den_;
        return;
    }
    if (den_.is_one()) {
        num_ = num_ * d + n;
        den_ = d;
        return;
    }
    if (den_.divide_exact(d, q)) {  // d | den_
        num_ += n * q;
        return;
    }
    if (d.divide_exact(den_, q)) {  // den_ | d
        num_ = num_ * q + n;
        den_ = d;
        return;
    }
    num_ = num_ * d + n * den_;
    den_ = den_ * d;
}

void RFAccum::add_product(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return;
    add_raw_(x.num() * y.num(), x.den() * y.den());
}

void RFAccum::sub_product(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero() || y.is_zero()) return;
    add_raw_(-(x.num() * y.num()), x.den() * y.den());
}

void RFAccum::add_product(const RatFunc& x, const RatFunc& y, const RatFunc& z) {
    if (x.is_zero() || y.is_zero() || z.is_zero()) return;
    add_raw_((x.num() * y.num()) * z.num(), (x.den() * y.den()) * z.den());
}

void RFAccum::sub_product(const RatFunc& x, const RatFunc& y, const RatFunc& z) {
    if (x.is_zero() || y.is_zero() || z.is_zero()) return;
    add_raw_(-((x.num() * y.num()) * z.num()), (x.den() * y.den()) * z.den());
}

RatFunc RFAccum::result() const {
    if (num_.is_zero()) return RatFunc(num_.vars());
    return RatFunc(num_, den_);
}

}  // namespace sympcalc
