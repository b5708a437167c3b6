#pragma once

#include "ps2/ode.hpp"

namespace ps2 {

inline RatFun partial(const RatFun& f, Var v) { return f.derivative(v); }
inline Poly partial(const Poly& f, Var v) { return f.derivative(v); }

// Total derivative along solutions of y'' = phi:  f_x + y' f_y + phi f_y'.
RatFun total_D(const RatFun& f, const RatFun& phi);

// N * D[f] for polynomial f; a polynomial because D carries phi = M/N.
Poly scaled_total_D(const Poly& f, const Poly& M, const Poly& N);

// (S_d N^2) D[f] as a polynomial.
Poly script_D(const Poly& f, const Poly& S_d, const Poly& M, const Poly& N);

// First-order operator N d/dx + M d/dy for y' = M/N.
Poly foode_D(const Poly& f, const FOODE& ode);
RatFun foode_D(const RatFun& f, const FOODE& ode);

}  // namespace ps2
