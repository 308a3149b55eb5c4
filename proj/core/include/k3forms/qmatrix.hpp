#pragma once

#include "k3forms/rational.hpp"

#include <vector>

namespace k3 {

// Dense rational matrix, row-major.
using QMatrix = std::vector<std::vector<Rational>>;

QMatrix qmat_identity(size_t n);
QMatrix qmat_mul(const QMatrix& a, const QMatrix& b);
QMatrix qmat_transpose(const QMatrix& a);
Rational qmat_det(QMatrix a); // by value: eliminates in place
bool qmat_is_symmetric(const QMatrix& a);
bool qmat_is_square(const QMatrix& a);

} // namespace k3
