#pragma once

#include <utility>
#include <vector>

#include "ps2/darboux.hpp"
#include "ps2/elem_invariant.hpp"
#include "ps2/ode.hpp"

namespace ps2 {

// N d/dx + M d/dy for y' = M/N.
VectorField foode_field(const FOODE& ode);

// Darboux polynomials of total degree <= deg, cofactor degree
// <= max(deg M, deg N) - 1.
std::vector<DarbouxPoly> find_darboux(const FOODE& ode, int deg, const SolveLimits& limits = {});

struct IntegratingFactor1 {
    std::vector<std::pair<DarbouxPoly, Rational>> factors;

    // prod f_i^n_i; throws UnsupportedIntegral for non-integer exponents.
    RatFun R() const;
};

// (R N)_x + (R M)_y
RatFun integrating_factor_residual(const FOODE& ode, const RatFun& R);

// Exponents with sum n_i cofactor_i = -(N_x + M_y). Among the solutions the one
// of least Euclidean norm is preferred; when that is fractional, integer
// representatives are tried. With no candidates the equation must already be
// exact (R = 1). Throws NoElementaryFactorAtThisDegree.
IntegratingFactor1 find_integrating_factor(const FOODE& ode, const std::vector<DarbouxPoly>& darboux);

// W with W_x = R M, W_y = -R N, normalized by normalize_scale.
ElemInvariant reduce_foode(const FOODE& ode, const IntegratingFactor1& factor);

struct Foode1Result {
    std::vector<DarbouxPoly> darboux;
    IntegratingFactor1 factor;
    ElemInvariant W;
    int degree = 0;
};

// Raises the Darboux degree from 1 to max_degree until an integrating factor is
// found and integrated. Throws NothingFound.
Foode1Result solve_foode(const FOODE& ode, int max_degree, const SolveLimits& limits = {});

}  // namespace ps2
