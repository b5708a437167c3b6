#pragma once

#include <vector>

#include "ps2/ratfun.hpp"

namespace ps2 {

struct LogTerm {
    Rational coeff;
    Poly arg;  // primitive, non-constant

    bool operator==(const LogTerm&) const = default;
};

// coeff * atan(num / den)
struct AtanTerm {
    Rational coeff;
    Poly num;
    Poly den;

    bool operator==(const AtanTerm&) const = default;
};

// z0 + sum c_i log(z_i) + sum c_j atan(num_j / den_j) with rational data.
struct ElemInvariant {
    RatFun z0;
    std::vector<LogTerm> logs;
    std::vector<AtanTerm> atans;

    bool is_rational() const { return logs.empty() && atans.empty(); }
    bool is_zero() const { return z0.is_zero() && is_rational(); }

    // Rational partial derivative (log and atan terms differentiated symbolically).
    RatFun derivative(Var v) const;

    double evaluate(const std::array<double, kNumVars>& point) const;

    bool operator==(const ElemInvariant&) const = default;
};

ElemInvariant operator+(const ElemInvariant& a, const ElemInvariant& b);
ElemInvariant operator-(const ElemInvariant& a);
ElemInvariant operator-(const ElemInvariant& a, const ElemInvariant& b);
ElemInvariant scale(const ElemInvariant& inv, const Rational& c);

// Canonical representation: log arguments split into squarefree primitive
// factors (monomial variables split off), associates merged, zero coefficients
// dropped, atan arguments reduced with positive leading numerator coefficient,
// and terms sorted by canonical order.
ElemInvariant canonicalize(ElemInvariant inv);

// Scales so that the canonical-order leading coefficient of z0's numerator is 1,
// or the first log coefficient when z0 vanishes (then the first atan coefficient).
ElemInvariant normalize_scale(const ElemInvariant& inv);

// Total ordering on polynomials used for deterministic term order.
bool poly_less(const Poly& a, const Poly& b);

}  // namespace ps2
