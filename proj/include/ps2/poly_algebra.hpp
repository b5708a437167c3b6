#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ps2/poly.hpp"

namespace ps2 {

// Rational content, signed so that content(p) * primitive(p) == p.
Rational content(const Poly& p);

// Integer coefficients with gcd 1 and positive leading coefficient (0 stays 0).
Poly primitive(const Poly& p);

// Quotient when b divides a exactly, nullopt otherwise. Throws DivisionByZero on b == 0.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

bool divides(const Poly& b, const Poly& a);

// Primitive gcd with positive leading coefficient (recursive content / primitive
// part reduction with a subresultant remainder sequence in the main variable).
// Throws Error when both arguments are zero.
Poly gcd(const Poly& a, const Poly& b);

Poly lcm(const Poly& a, const Poly& b);

// Coefficients of p viewed as a univariate polynomial in v; entry i multiplies v^i.
std::vector<Poly> coefficients_in(const Poly& p, Var v);
Poly from_coefficients(const std::vector<Poly>& coeffs, Var v);

// gcd of the coefficients of p as a polynomial in v.
Poly content_in(const Poly& p, Var v);

// Pseudo-remainder of a by b with respect to v.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);

// Resultant with respect to v (Sylvester determinant, fraction-free elimination).
Poly resultant(const Poly& a, const Poly& b, Var v);

// Squarefree decomposition: p = c * prod f_i^{m_i}, factors primitive and
// pairwise coprime, multiplicities strictly positive. Constant c is returned first.
struct SquarefreeFactor {
    Poly factor;
    int multiplicity;
};
std::pair<Rational, std::vector<SquarefreeFactor>> squarefree_decomposition(const Poly& p);

// Product of the distinct irreducible-factor classes (multiplicity dropped), primitive.
Poly squarefree_part(const Poly& p);

Poly substitute(const Poly& p, Var v, const Poly& value);
Poly substitute(const Poly& p, Var v, const Rational& value);

double evaluate(const Poly& p, const std::array<double, kNumVars>& point);
Rational evaluate(const Poly& p, const std::array<Rational, kNumVars>& point);

// Monomial of highest power dividing every term (exponentwise minimum).
Monomial monomial_content(const Poly& p);

// True when every coefficient is an integer.
bool has_integer_coefficients(const Poly& p);

}  // namespace ps2
