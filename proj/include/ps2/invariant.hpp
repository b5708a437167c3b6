#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ps2/elem_invariant.hpp"
#include "ps2/ps_soode.hpp"

namespace ps2 {

using Gradient = std::array<RatFun, 3>;  // components along x, y, y'

// True when the mixed partials of grad agree (the 1-form is closed).
bool is_closed(const Gradient& grad);

// Potential F with dF/dv = grad[v] for v in `order`; the other components must
// vanish. Integrates the first component in its variable, then for each later
// variable integrates what the earlier result still misses; that correction
// has to be free of the earlier variables. Throws UnsupportedIntegral when a
// step leaves a remainder, InternalError when the form is not closed.
ElemInvariant integrate_gradient(const Gradient& grad, std::span<const Var> order);

// (R (phi + S y'), -R S, -R)
Gradient invariant_gradient(const SRPair& pair);

// Invariant of a verified pair, integrated in x, then y, then y', and scaled
// by normalize_scale.
ElemInvariant build_invariant(const SRPair& pair);

// One explicit branch y' = base + sign * sqrt(radicand); C1 is carried by the
// variable t. radicand == 0 for a linear relation.
struct ExplicitBranch {
    RatFun base;
    RatFun radicand;
    int sign = 0;
};

// I(x, y, y') = C1, plus explicit branches when I is rational and of degree
// at most 2 in y'.
struct ReducedODE {
    ElemInvariant invariant;
    std::vector<ExplicitBranch> branches;

    std::string implicit_text() const;             // "<I> = C1"
    std::vector<std::string> explicit_text() const;  // "y' = ..."
};

ReducedODE reduce(const SOODE& ode, const ElemInvariant& inv);

}  // namespace ps2
