#ifndef PROPHECKE_INTMATH_HPP_
#define PROPHECKE_INTMATH_HPP_

// Small integer and rational matrix helpers (lattice kernels, Smith form).

#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace prophecke {

using IMat = std::vector<std::vector<long long>>;
using QMat = std::vector<std::vector<boost::rational<long long>>>;

// Z-basis of {x in Z^n : A x = 0}; A is k x n.  Rows of the result.
IMat integer_kernel(const IMat& A, int n);

// Inverse of a square rational matrix, or nothing if singular.
std::optional<QMat> rational_inverse(const QMat& A);

struct SmithForm {
  IMat U;                      // unimodular, rows x rows
  std::vector<long long> d;    // diagonal entries, length min(rows, cols)
};
// U A V = diag(d) for unimodular U, V (V not returned).  A is rows x cols.
SmithForm smith_form(const IMat& A, int rows, int cols);

// Inverse of a unimodular integer matrix.
IMat unimodular_inverse(const IMat& U);

}  // namespace prophecke

#endif  // PROPHECKE_INTMATH_HPP_
