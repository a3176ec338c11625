#ifndef PROPHECKE_LINALG_HPP_
#define PROPHECKE_LINALG_HPP_

// Dense exact linear algebra over a Field.

#include <optional>
#include <string>
#include <vector>

#include "prophecke/field.hpp"

namespace prophecke {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Fe> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  Fe& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Fe operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool operator==(const Mat&) const = default;

  static Mat identity(int n);
  bool is_zero() const;
  bool square() const { return rows == cols; }
};

Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_add(const Field& F, const Mat& A, const Mat& B);
Mat mat_sub(const Field& F, const Mat& A, const Mat& B);
Mat mat_scale(const Field& F, Fe c, const Mat& A);
Mat mat_pow(const Field& F, const Mat& A, long long e);  // negative e inverts
Mat transpose(const Mat& A);
Mat direct_sum(const Mat& A, const Mat& B);
// Rows of A stacked over rows of B.
Mat vstack(const Mat& A, const Mat& B);
// Rows listed in idx, in that order.
Mat select_rows(const Mat& A, const std::vector<int>& idx);

struct Echelon {
  Mat R;                // reduced row echelon form
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon rref(const Field& F, Mat A);
int rank(const Field& F, const Mat& A);
Fe det(const Field& F, Mat A);
std::optional<Mat> inverse(const Field& F, const Mat& A);
// Basis of {x : A x = 0} as the rows of the result, in RREF order.
Mat nullspace(const Field& F, const Mat& A);
// Basis of the row space of A in reduced echelon form.
Mat row_space(const Field& F, const Mat& A);
// Some x with A x = b (b a column given as a vector), or nothing.
std::optional<std::vector<Fe>> solve(const Field& F, const Mat& A, const std::vector<Fe>& b);
// True iff every row of B lies in the row space of A.
bool rows_in_span(const Field& F, const Mat& A, const Mat& B);
// Matrix of the restriction of the right action v -> v X to the row space
// spanned by basis B (rows independent, stable under X): returns Y with
// B X = Y B.  Throws std::runtime_error if the span is not stable.
Mat restrict_to_rows(const Field& F, const Mat& B, const Mat& X);

std::string to_string(const Field& F, const Mat& A);

}  // namespace prophecke

#endif  // PROPHECKE_LINALG_HPP_
