#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ps2/elem_invariant.hpp"
#include "ps2/expr.hpp"
#include "ps2/ode.hpp"

namespace ps2 {

using ParsedOde = std::variant<SOODE, FOODE>;

// "y'' = expr" or "y' = expr" (y1 is accepted for y').
ParsedOde parse_ode(std::string_view text);
SOODE parse_soode(std::string_view text);  // ParseError if first order
FOODE parse_foode(std::string_view text);  // ParseError if second order

RatFun to_ratfun(const ExprAst& ast);
RatFun parse_ratfun(std::string_view text);  // C1 is accepted and maps to Var::t
Poly parse_poly(std::string_view text);  // ParseError if the value has a denominator

// Rational expression plus linear combinations of log(...) and atan(...).
ElemInvariant parse_invariant(std::string_view text);

// Deterministic text forms; every output re-parses to the same value.
std::string render(const Poly& p);
std::string render(const RatFun& f);
std::string render(const ElemInvariant& inv);
std::string render(const SOODE& ode);
std::string render(const FOODE& ode);

}  // namespace ps2
