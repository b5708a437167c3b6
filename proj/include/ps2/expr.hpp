#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ps2/monomial.hpp"
#include "ps2/rational.hpp"

namespace ps2 {

// Parsed expression tree. `log` and `atan` nodes only appear when the parser
// runs in invariant mode; ODE right-hand sides are purely rational.
struct ExprAst {
    enum class Kind { number, variable, add, sub, mul, div, pow, neg, log, atan };

    Kind kind = Kind::number;
    std::vector<ExprAst> children;
    Rational number;        // kind == number
    Var variable = Var::x;  // kind == variable
    int exponent = 0;       // kind == pow
    std::size_t position = 0;
};

struct ParseOptions {
    bool allow_functions = false;  // accept log(...) and atan(...)
    bool allow_constant = false;   // accept the integration constant C1
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' int)?
//   base   := 'x' | 'y' | "y'" | 'y1' | rational | '(' expr ')' | '-' factor | call
// Throws ParseError (with offset) or UnsupportedExpression.
ExprAst parse_expression(std::string_view text, ParseOptions options = {});

}  // namespace ps2
