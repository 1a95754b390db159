#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "sympcalc/bigint.hpp"
#include "sympcalc/expr.hpp"
#include "sympcalc/poly.hpp"
#include "sympcalc/ratfunc.hpp"
#include "sympcalc/rational.hpp"

using namespace sympcalc;

namespace {

// Independent oracle: evaluates an expression string numerically over
// Rational while parsing, with no Poly/RatFunc machinery involved.
class DirectEval {
public:
    DirectEval(std::string_view text, const Vars& vars,
               const std::vector<Rational>& point)
        : text_(text), vars_(vars), point_(point) {}

    Rational run() {
        Rational r = expr();
        skip();
        if (pos_ != text_.size()) throw std::runtime_error("oracle: trailing");
        return r;
    }

private:
    std::string_view text_;
    const Vars& vars_;
    const std::vector<Rational>& point_;
    size_t pos_ = 0;

    void skip() {
        while (pos_ < text_.size() && isspace((unsigned char)text_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    Rational expr() {
        Rational acc = term();
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }
    Rational term() {
        Rational acc = unary();
        while (true) {
            if (eat('*')) acc *= unary();
            else if (eat('/')) acc /= unary();
            else return acc;
        }
    }
    Rational unary() {
        if (eat('-')) return -unary();
        return power();
    }
    Rational power() {
        Rational b = atom();
        if (eat('^')) {
            skip();
            long long e = 0;
            while (pos_ < text_.size() && isdigit((unsigned char)text_[pos_]))
                e = e * 10 + (text_[pos_++] - '0');
            Rational r(1);
            for (long long i = 0; i < e; ++i) r *= b;
            return r;
        }
        return b;
    }
    Rational atom() {
        skip();
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Rational r = expr();
            eat(')');
            return r;
        }
        if (isdigit((unsigned char)c)) {
            size_t s = pos_;
            while (pos_ < text_.size() && isdigit((unsigned char)text_[pos_])) ++pos_;
            return Rational(BigInt::from_string(text_.substr(s, pos_ - s)));
        }
        size_t s = pos_;
        ++pos_;
        while (pos_ < text_.size() &&
               (isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        int idx = vars_.index_of(std::string(text_.substr(s, pos_ - s)));
        return point_[idx];
    }
};

Rational rand_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-12, 12);
    std::uniform_int_distribution<long long> den(1, 9);
    return Rational(num(rng), den(rng));
}

std::vector<Rational> rand_point(std::mt19937_64& rng, size_t dim) {
    std::vector<Rational> p;
    for (size_t i = 0; i < dim; ++i) p.push_back(rand_rational(rng));
    return p;
}

Poly rand_poly(std::mt19937_64& rng, const VarsPtr& vars, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> nterms(1, 5);
    Poly p(vars);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Expvec e(vars->size(), 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> pick(0, (int)vars->size() - 1);
        for (int d = 0; d < budget; ++d) e[pick(rng)]++;
        p += Poly::monomial(vars, e, rand_rational(rng));
    }
    return p;
}

RatFunc rand_ratfunc(std::mt19937_64& rng, const VarsPtr& vars) {
    Poly n = rand_poly(rng, vars, 3);
    Poly d(vars);
    do {
        d = rand_poly(rng, vars, 2);
    } while (d.is_zero());
    return RatFunc(std::move(n), std::move(d));
}

}  // namespace

TEST_CASE("bigint: small-value arithmetic agrees with long long") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-1000000, 1000000);
    for (int i = 0; i < 500; ++i) {
        long long a = d(rng), b = d(rng);
        CHECK((BigInt(a) + BigInt(b)).to_i64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_i64() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_i64() == a * b);
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_i64() == a / b);
            CHECK((BigInt(a) % BigInt(b)).to_i64() == a % b);
        }
    }
}

TEST_CASE("bigint: multi-limb divmod identity and string round-trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-1000000000000ll, 1000000000000ll);
    for (int i = 0; i < 300; ++i) {
        BigInt a = BigInt(d(rng)) * BigInt(d(rng)) + BigInt(d(rng));
        BigInt b = BigInt(d(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(BigInt::compare_magnitude(r, b) < 0);
        CHECK(BigInt::from_string(a.to_string()) == a);
    }
    BigInt big = BigInt::from_string("123456789012345678901234567890123456789");
    CHECK(big.to_string() == "123456789012345678901234567890123456789");
    CHECK((big * big) / big == big);
}

TEST_CASE("bigint: gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(-18)).to_i64() == 6);
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)).to_i64() == 5);
    BigInt a = BigInt::from_string("123456789123456789");
    CHECK(BigInt::gcd(a * BigInt(35), a * BigInt(21)) == a * BigInt(7));
}

TEST_CASE("rational: canonical form and ordering") {
    Rational r(6, -4);
    CHECK(r.num().to_i64() == -3);
    CHECK(r.den().to_i64() == 2);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
    CHECK(Rational(7, 3).to_string() == "7/3");
}

TEST_CASE("poly: arithmetic, grlex leading term, exact division") {
    auto vars = make_vars({"x", "y"});
    Poly x = Poly::variable(vars, 0);
    Poly y = Poly::variable(vars, 1);
    Poly p = x * x + x * y.scaled(Rational(2)) + y * y;  // (x+y)^2
    Poly q = x + y;
    CHECK(p == q * q);
    Poly quo(vars);
    CHECK(p.divide_exact(q, quo));
    CHECK(quo == q);
    CHECK_FALSE((p + Poly(vars, Rational(1))).divide_exact(q, quo));
    // grlex: x^2 beats x*y beats y^2 at equal degree
    CHECK(p.leading_exponent() == Expvec{2, 0});
    CHECK((x * y + y).leading_exponent() == Expvec{1, 1});
}

TEST_CASE("poly: gcd strips exactly the common factor") {
    auto vars = make_vars({"x", "y", "z"});
    Poly x = Poly::variable(vars, 0);
    Poly y = Poly::variable(vars, 1);
    Poly z = Poly::variable(vars, 2);
    Poly q = Poly(vars, Rational(1)) + x * x + y * y + z * z;
    Poly a = q.pow(3) * (x + y);
    Poly b = q.pow(2) * (x - y);
    Poly g = Poly::gcd(a, b);
    CHECK(g == q.pow(2));
    CHECK(Poly::gcd(x * y, z).is_one());
    CHECK(Poly::gcd(x + y, x + y) == x + y);
    // content handling: gcd(2x, 4y) over Q is primitive
    CHECK(Poly::gcd(x.scaled(Rational(2)), y.scaled(Rational(4))).is_one());
}

TEST_CASE("poly: gcd randomized against planted factors") {
    std::mt19937_64 rng(23);
    auto vars = make_vars({"x", "y"});
    for (int i = 0; i < 40; ++i) {
        Poly g = rand_poly(rng, vars, 2);
        if (g.is_zero()) continue;
        Poly a = g * rand_poly(rng, vars, 2);
        Poly b = g * rand_poly(rng, vars, 2);
        if (a.is_zero() || b.is_zero()) continue;
        Poly d = Poly::gcd(a, b);
        Poly quo(vars);
        CHECK(a.divide_exact(d, quo));
        CHECK(b.divide_exact(d, quo));
        CHECK(d.divide_exact(g.primitive_part(), quo));
    }
}

TEST_CASE("ratfunc: canonical reduction") {
    auto vars = make_vars({"x"});
    RatFunc x = RatFunc::variable(vars, 0);
    RatFunc one = RatFunc::constant(vars, Rational(1));
    // x/x - 1 == 0
    CHECK((x / x - one).is_zero());
    // (x+y)^2 - expansion is zero (single var analogue)
    RatFunc p = (x + one) * (x + one) - x * x - x.scaled(Rational(2)) - one;
    CHECK(p.is_zero());
    // canonical monic denominator
    RatFunc f = one / (x.scaled(Rational(2)) + RatFunc::constant(vars, Rational(2)));
    CHECK(f.den().leading_coeff().is_one());
}

TEST_CASE("parse_expr: trivial cases") {
    auto vars = make_vars({"x", "y"});
    CHECK(parse_expr("0", vars).is_zero());
    CHECK(parse_expr("x^2 - x*x", vars).is_zero());
    RatFunc f = parse_expr("1/(1+x^2+y^2)", vars);
    CHECK(f.num().is_one());
    CHECK(f.den() == parse_expr("1+x^2+y^2", vars).num());
}

TEST_CASE("parse_expr: evaluation cross-check at random rational points") {
    auto vars = make_vars({"x", "y"});
    std::mt19937_64 rng(41);
    const char* inputs[] = {
        "1/(1+x^2+y^2)",
        "(x - 2*y)^3/(1 + x*y + y^4) - 7",
        "-x^5 + 3*x*y/(2 - x) + 1/3/(1+y^2)",
        "x*(y - 1)*(y + 1)/(x^2 + 1)",
    };
    for (const char* s : inputs) {
        RatFunc f = parse_expr(s, vars);
        int done = 0;
        while (done < 5) {
            auto pt = rand_point(rng, 2);
            try {
                Rational direct = DirectEval(s, *vars, pt).run();
                Rational stored = f.evaluate(pt);
                CHECK(direct == stored);
                ++done;
            } catch (const std::exception&) {
                // denominator hit zero at this point: rejection sampling
            }
        }
    }
}

TEST_CASE("parse_expr: errors carry positions") {
    auto vars = make_vars({"x"});
    CHECK_THROWS_AS(parse_expr("x +", vars), ParseError);
    CHECK_THROWS_AS(parse_expr("x + q", vars), ParseError);
    CHECK_THROWS_AS(parse_expr("x^y", vars), ParseError);
    CHECK_THROWS_AS(parse_expr("x^-2", vars), ParseError);
    CHECK_THROWS_AS(parse_expr("1/(x - x)", vars), ParseError);
    CHECK_THROWS_AS(parse_expr("(x", vars), ParseError);
    try {
        parse_expr("x + q", vars);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("partial: power rule, independence, quotient rule oracle") {
    auto vars = make_vars({"x", "y"});
    RatFunc x2 = parse_expr("x^2", vars);
    CHECK(x2.partial("x") == parse_expr("2*x", vars));
    CHECK(parse_expr("x", vars).partial("y").is_zero());
    // d/dx 1/(1+x^2) = -2x/(1+x^2)^2, expanded by hand as the oracle
    RatFunc f = parse_expr("1/(1+x^2)", vars);
    RatFunc expect = parse_expr("-2*x/((1+x^2)*(1+x^2))", vars);
    CHECK(f.partial("x") == expect);
    // and at 5 random points, df agrees with the quotient rule assembled
    // from independently parsed pieces
    std::mt19937_64 rng(5);
    RatFunc df = f.partial("x");
    int done = 0;
    while (done < 5) {
        auto pt = rand_point(rng, 2);
        try {
            Rational lhs = df.evaluate(pt);
            Rational den = parse_expr("1+x^2", vars).evaluate(pt);
            Rational rhs = -(Rational(2) * pt[0]) / (den * den);
            CHECK(lhs == rhs);
            ++done;
        } catch (const std::exception&) {
        }
    }
    CHECK_THROWS(f.partial("zz"));
}

TEST_CASE("is_zero: algebraic identities") {
    auto vars = make_vars({"x", "y"});
    CHECK(parse_expr("(x+y)^2 - x^2 - 2*x*y - y^2", vars).is_zero());
    CHECK(parse_expr("x/x - 1", vars).is_zero());
    RatFunc f = parse_expr("x^3*y/(1+y^2)", vars);
    CHECK((f.partial("x").partial("y") - f.partial("y").partial("x")).is_zero());
}

TEST_CASE("field axioms on random triples, symbolically and at points") {
    auto vars = make_vars({"x", "y"});
    std::mt19937_64 rng(17);
    for (int i = 0; i < 16; ++i) {
        RatFunc a = rand_ratfunc(rng, vars);
        RatFunc b = rand_ratfunc(rng, vars);
        RatFunc c = rand_ratfunc(rng, vars);
        RatFunc assoc = (a + b) + c - (a + (b + c));
        RatFunc distr = a * (b + c) - (a * b + a * c);
        RatFunc mul_assoc = (a * b) * c - (a * (b * c));
        CHECK(assoc.is_zero());
        CHECK(distr.is_zero());
        CHECK(mul_assoc.is_zero());
        int done = 0;
        while (done < 2) {
            auto pt = rand_point(rng, 2);
            try {
                Rational va = a.evaluate(pt), vb = b.evaluate(pt), vc = c.evaluate(pt);
                CHECK((va + vb) * vc == va * vc + vb * vc);
                ++done;
            } catch (const std::exception&) {
            }
        }
    }
}

TEST_CASE("partial derivatives commute on random rational functions") {
    auto vars = make_vars({"x", "y", "z"});
    std::mt19937_64 rng(29);
    for (int i = 0; i < 12; ++i) {
        RatFunc f = rand_ratfunc(rng, vars);
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 3; ++v)
                CHECK((f.partial(u).partial(v) - f.partial(v).partial(u)).is_zero());
    }
}

TEST_CASE("parse of print is the identity on canonical forms") {
    auto vars = make_vars({"x", "y"});
    std::mt19937_64 rng(31);
    for (int i = 0; i < 24; ++i) {
        RatFunc f = rand_ratfunc(rng, vars);
        RatFunc g = parse_expr(f.to_string(), vars);
        CHECK(f == g);
    }
    RatFunc zero(vars);
    CHECK(parse_expr(zero.to_string(), vars).is_zero());
}
