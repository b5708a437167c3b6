#pragma once

#include "ps2/ratfun.hpp"

namespace ps2 {

// y'' = M(x, y, y') / N(x, y, y'), with gcd(M, N) = 1 and N normalized as a
// RatFun denominator (integer, primitive, positive leading coefficient).
struct SOODE {
    Poly M;
    Poly N;

    RatFun phi() const { return RatFun(M, N); }
    bool operator==(const SOODE&) const = default;
};

// y' = M(x, y) / N(x, y); same normalization, no y'.
struct FOODE {
    Poly M;
    Poly N;

    RatFun rhs() const { return RatFun(M, N); }
    bool operator==(const FOODE&) const = default;
};

// Canonical (M, N) of a rational right-hand side.
SOODE make_soode(const RatFun& phi);
FOODE make_foode(const RatFun& rhs);  // throws Error when rhs contains y'

}  // namespace ps2
