#pragma once

#include "ps2/elem_invariant.hpp"

namespace ps2 {

// Antiderivative in v of a rational function whose coefficients are rational
// in the remaining variables. `value` is exact when `remainder` is zero;
// otherwise value' + remainder equals the integrand.
struct IntegralResult {
    ElemInvariant value;
    RatFun remainder;

    bool complete() const { return remainder.is_zero(); }
};

// Polynomial part, Hermite reduction, then Rothstein–Trager for residues that
// are rational numbers or conjugate pairs a +- b i with a, b rational (the
// pairs become a log of a sum of squares plus an arctangent). Terms of the
// answer that do not depend on v may be dropped or added freely.
IntegralResult integrate_rational_partial(const RatFun& f, Var v);

// Same, throwing UnsupportedIntegral when a remainder is left. The result is
// checked by differentiation.
ElemInvariant integrate_rational(const RatFun& f, Var v);

// Hermite step only: f = g' + h with h having a squarefree denominator in v.
struct HermiteSplit {
    RatFun g;  // rational part of the antiderivative (polynomial part included)
    RatFun h;  // proper, squarefree denominator in v
};
HermiteSplit hermite_reduce(const RatFun& f, Var v);

}  // namespace ps2
