#pragma once

#include <array>
#include <span>
#include <vector>

#include "ps2/algsys.hpp"
#include "ps2/poly.hpp"

namespace ps2 {

// Polynomial vector field sum a_v d/dv over x, y, y'.
struct VectorField {
    std::array<Poly, 3> coeff;  // indexed by x, y, y'

    template <class C>
    BasicPoly<C> apply(const BasicPoly<C>& f) const {
        BasicPoly<C> out;
        for (Var v : kOdeVars) {
            const Poly& a = coeff[static_cast<std::size_t>(index(v))];
            if (a.is_zero()) continue;
            const BasicPoly<C> df = f.derivative(v);
            if (df.is_zero()) continue;
            if constexpr (std::is_same_v<C, Rational>)
                out += a * df;
            else
                out += lift(a) * df;
        }
        return out;
    }

    // Largest total degree among the components (-1 for the zero field).
    int degree() const;
    std::vector<Var> variables() const;  // variables the field acts on or depends on
};

struct DarbouxPoly {
    Poly f;         // primitive, non-constant
    Poly cofactor;  // field(f) = cofactor * f

    bool operator==(const DarbouxPoly&) const = default;
};

// Darboux polynomials of total degree <= degree in `vars`, cofactor of total
// degree <= cofactor_degree, found by a bilinear ansatz solved branch by branch
// over the scaling gauge. Families are represented by the free-variable
// heuristic. Results are deduplicated up to associates and sorted.
std::vector<DarbouxPoly> darboux_polynomials(const VectorField& field, std::span<const Var> vars, int degree,
                                             int cofactor_degree, const SolveLimits& limits);

}  // namespace ps2
