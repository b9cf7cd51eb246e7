#pragma once

#include <vector>

#include "cpnsurf/jet.hpp"

namespace cpnsurf {

/// All roots of a complex polynomial (ascending coefficients) via companion
/// matrix eigenvalues, polished by one Newton step each. Multiple roots come
/// out as nearby copies; callers group them as needed.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

/// Effective degree after dropping trailing (highest-power) zero
/// coefficients; -1 for the zero polynomial.
int poly_degree(const std::vector<Complex>& coeffs);

/// Distance from point p to the segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

}  // namespace cpnsurf
