// Multivariate polynomials over the rationals in a fixed, ordered list of
// coordinate names (at most 7 of them).  Monomials are packed into a single
// 64-bit key -- total degree in the top byte, one byte per variable below it
// -- so that unsigned comparison is exactly the graded-lexicographic order
// with earlier coordinates more significant.  Terms are kept as a flat
// vector sorted ascending by key; the leading term is the back.  Exact
// multivariate GCD is provided so rational functions stay fully reduced.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sympcalc/rational.hpp"

namespace sympcalc {

struct Vars {
    std::vector<std::string> names;

    int index_of(const std::string& name) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }
    size_t size() const { return names.size(); }
};

using VarsPtr = std::shared_ptr<const Vars>;

VarsPtr make_vars(std::vector<std::string> names);

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) {
    return a == b || (a && b && a->names == b->names);
}

using Expvec = std::vector<uint16_t>;
using Mono = uint64_t;

constexpr int kMaxVars = 7;

Mono pack_mono(const Expvec& e);
Expvec unpack_mono(Mono m, size_t nvars);
int mono_total_degree(Mono m);
int mono_exponent(Mono m, int var);
// b divides a componentwise.
bool mono_divides(Mono b, Mono a);

class Poly {
public:
    struct Term {
        Mono mono;
        Rational coeff;
    };
    using TermVec = std::vector<Term>;

    explicit Poly(VarsPtr vars) : vars_(std::move(vars)) {}
    Poly(VarsPtr vars, const Rational& c);

    static Poly constant(VarsPtr vars, const Rational& c) { return Poly(vars, c); }
    static Poly variable(VarsPtr vars, int index);
    static Poly monomial(VarsPtr vars, const Expvec& e, const Rational& c);

    const VarsPtr& vars() const { return vars_; }
    const TermVec& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0);
    }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].mono == 0 &&
               terms_[0].coeff.is_one();
    }
    Rational constant_value() const;  // term at monomial 1 (0 if absent)

    int total_degree() const;      // -1 for zero
    int degree_in(int var) const;  // -1 for zero
    bool uses_var(int var) const;

    Expvec leading_exponent() const;
    const Rational& leading_coeff() const;
    Mono leading_mono() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);

    Poly scaled(const Rational& c) const;
    Poly mul_monomial(const Expvec& e, const Rational& c) const;
    Poly pow(int k) const;

    Poly partial(int var) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    // Exact division; returns false (leaving q untouched) when b does not
    // divide *this.
    bool divide_exact(const Poly& b, Poly& q) const;

    bool operator==(const Poly& b) const;
    bool operator!=(const Poly& b) const { return !(*this == b); }

    // Content as rational: c such that *this / c has coprime integer
    // coefficients with positive leading coefficient.  Zero for zero.
    Rational rational_content() const;
    Poly primitive_part() const;

    // GCD, returned primitive with positive leading coefficient (1 for
    // coprime inputs; 0 only when both inputs are 0).  Heuristic evaluation
    // method verified by trial division, with a primitive pseudo-remainder
    // sequence as fallback.
    static Poly gcd(const Poly& a, const Poly& b);

    Poly substitute(int var, const BigInt& value) const;
    BigInt max_coeff_norm() const;

    std::string to_string() const;  // conforms to the expression grammar

    void set_term(const Expvec& e, const Rational& c);

    // GCD internals, exposed for the heuristic's content-splitting recursion.
    static Poly gcd_prs_(const Poly& a, const Poly& b);
    static bool gcd_heuristic_(const Poly& a, const Poly& b, Poly& out);

    // Raw sorted-term access for performance-sensitive internals.
    static Poly from_sorted_terms(VarsPtr vars, TermVec terms);

private:
    VarsPtr vars_;
    TermVec terms_;  // ascending by mono; no zero coefficients

    void add_term_(Mono m, const Rational& c);

    static Poly gcd_inner_(const Poly& a, const Poly& b);
    static Poly content_in_var_(const Poly& a, int var);
    static Poly coeff_of_power_(const Poly& a, int var, int k);
    static Poly pseudo_rem_(const Poly& a, const Poly& b, int var);
};

}  // namespace sympcalc
