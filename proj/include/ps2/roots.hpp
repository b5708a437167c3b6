#pragma once

#include <vector>

#include "ps2/rational.hpp"

namespace ps2 {

// Distinct rational roots of sum c[i] t^i, ascending. The rational root theorem
// is applied to the squarefree part with integer coefficients; huge constant or
// leading coefficients are factored by trial division only, so a cofactor above
// 10^12 is treated as prime.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

// Divides out (t - r) for each given root once; coefficients in ascending order.
std::vector<Rational> deflate(std::vector<Rational> coeffs, const std::vector<Rational>& roots);

}  // namespace ps2
