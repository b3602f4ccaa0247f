#pragma once

#include <vector>

#include "plurigreen/polynomial.hpp"

namespace plurigreen {

/// Roots of c_0 + c_1 t + ... + c_d t^d (coefficients lowest first) as
/// eigenvalues of the companion matrix, each polished by two Newton steps.
/// Leading zero coefficients are dropped; the zero polynomial throws.
std::vector<Complex> polynomial_roots(std::vector<Complex> coefficients);

/// Roots of a univariate Laurent polynomial, found after multiplying through
/// by the lowest negative power of t (so t = 0 is never a spurious root).
std::vector<Complex> laurent_roots(const MultiPoly& p);

}  // namespace plurigreen
