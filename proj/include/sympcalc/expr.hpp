// Text grammar for exact scalar expressions:
//
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' nonnegative-integer-literal)?
//   atom  := integer | identifier | '(' expr ')'
//
// Integers are base 10; identifiers are [a-zA-Z][a-zA-Z0-9_]* and must name a
// declared coordinate; ASCII whitespace is ignored.  No floats, no functions.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "sympcalc/ratfunc.hpp"

namespace sympcalc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

RatFunc parse_expr(std::string_view text, const VarsPtr& vars);

}  // namespace sympcalc
