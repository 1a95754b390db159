#include "sympcalc/expr.hpp"

#include <cctype>

namespace sympcalc {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarsPtr& vars)
        : text_(text), vars_(vars) {}

    RatFunc run() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return r;
    }

private:
    std::string_view text_;
    const VarsPtr& vars_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool eat(char c) {
        if (!peek_is(c)) return false;
        ++pos_;
        return true;
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        while (true) {
            if (eat('*')) {
                acc *= unary();
            } else if (eat('/')) {
                size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero())
                    throw ParseError("division by the zero polynomial", at);
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        if (eat('-')) return -unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = atom();
        if (eat('^')) {
            skip_ws();
            size_t at = pos_;
            if (pos_ >= text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError(
                    "exponent must be a nonnegative integer literal", at);
            long long e = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 4096) throw ParseError("exponent too large", at);
                ++pos_;
            }
            // Exponentiation applies to num and den separately; both stay
            // canonical under integer powers.
            RatFunc out(Poly(base.num().pow(static_cast<int>(e))),
                        Poly(base.den().pow(static_cast<int>(e))));
            return out;
        }
        return base;
    }

    RatFunc atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!eat(')'))
                throw ParseError("expected ')'", pos_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            BigInt v = BigInt::from_string(text_.substr(start, pos_ - start));
            return RatFunc::constant(vars_, Rational(std::move(v)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            int idx = vars_->index_of(name);
            if (idx < 0)
                throw ParseError("unknown identifier '" + name + "'", start);
            return RatFunc::variable(vars_, idx);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace

RatFunc parse_expr(std::string_view text, const VarsPtr& vars) {
    return Parser(text, vars).run();
}

}  // namespace sympcalc
