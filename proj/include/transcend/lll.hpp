#ifndef TRANSCEND_LLL_HPP
#define TRANSCEND_LLL_HPP

#include "transcend/linalg.hpp"

namespace transcend {

// Nearest integer to a rational (ties toward +infinity).
Integer round_nearest(const Rational& q);

// Lenstra-Lenstra-Lovasz reduction of the rows of B (delta = 3/4) in exact
// rational arithmetic.  Rows must be linearly independent.
Matrix<Integer> lll_reduce(Matrix<Integer> B);

} // namespace transcend

#endif
