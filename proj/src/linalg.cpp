#include "prophecke/linalg.hpp"

#include <stdexcept>

namespace prophecke {

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

bool Mat::is_zero() const {
  for (Fe x : a)
    if (x != 0) return false;
  return true;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      Fe x = A(i, k);
      if (x == 0) continue;
      for (int j = 0; j < B.cols; ++j) {
        Fe y = B(k, j);
        if (y != 0) C(i, j) = F.add(C(i, j), F.mul(x, y));
      }
    }
  }
  return C;
}

Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_add: shape mismatch");
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(C.a[i], B.a[i]);
  return C;
}

Mat mat_sub(const Field& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_sub: shape mismatch");
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(C.a[i], B.a[i]);
  return C;
}

Mat mat_scale(const Field& F, Fe c, const Mat& A) {
  Mat C = A;
  for (Fe& x : C.a) x = F.mul(c, x);
  return C;
}

Mat mat_pow(const Field& F, const Mat& A, long long e) {
  if (!A.square()) throw std::invalid_argument("mat_pow: not square");
  Mat base = A;
  if (e < 0) {
    auto inv = inverse(F, A);
    if (!inv) throw std::domain_error("mat_pow: singular matrix to negative power");
    base = *inv;
    e = -e;
  }
  Mat r = Mat::identity(A.rows);
  while (e > 0) {
    if (e & 1) r = mat_mul(F, r, base);
    e >>= 1;
    if (e > 0) base = mat_mul(F, base, base);
  }
  return r;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Mat direct_sum(const Mat& A, const Mat& B) {
  Mat C(A.rows + B.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C(A.rows + i, A.cols + j) = B(i, j);
  return C;
}

Mat vstack(const Mat& A, const Mat& B) {
  if (A.rows == 0) return B;
  if (B.rows == 0) return A;
  if (A.cols != B.cols) throw std::invalid_argument("vstack: column mismatch");
  Mat C(A.rows + B.rows, A.cols);
  std::copy(A.a.begin(), A.a.end(), C.a.begin());
  std::copy(B.a.begin(), B.a.end(), C.a.begin() + static_cast<long>(A.a.size()));
  return C;
}

Mat select_rows(const Mat& A, const std::vector<int>& idx) {
  Mat C(static_cast<int>(idx.size()), A.cols);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (int j = 0; j < A.cols; ++j) C(static_cast<int>(r), j) = A(idx[r], j);
  return C;
}

Echelon rref(const Field& F, Mat A) {
  Echelon e;
  int row = 0;
  for (int col = 0; col < A.cols && row < A.rows; ++col) {
    int piv = -1;
    for (int i = row; i < A.rows; ++i)
      if (A(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < A.cols; ++j) std::swap(A(piv, j), A(row, j));
    Fe inv = F.inv(A(row, col));
    for (int j = col; j < A.cols; ++j) A(row, j) = F.mul(A(row, j), inv);
    for (int i = 0; i < A.rows; ++i) {
      if (i == row || A(i, col) == 0) continue;
      Fe f = A(i, col);
      for (int j = col; j < A.cols; ++j)
        if (A(row, j) != 0) A(i, j) = F.sub(A(i, j), F.mul(f, A(row, j)));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.R = std::move(A);
  return e;
}

int rank(const Field& F, const Mat& A) { return rref(F, A).rank(); }

Fe det(const Field& F, Mat A) {
  if (!A.square()) throw std::invalid_argument("det: not square");
  const int n = A.rows;
  Fe d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (A(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, A(col, col));
    Fe inv = F.inv(A(col, col));
    for (int i = col + 1; i < n; ++i) {
      if (A(i, col) == 0) continue;
      Fe f = F.mul(A(i, col), inv);
      for (int j = col; j < n; ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(col, j)));
    }
  }
  return d;
}

std::optional<Mat> inverse(const Field& F, const Mat& A) {
  if (!A.square()) throw std::invalid_argument("inverse: not square");
  const int n = A.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(F, aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  return inv;
}

Mat nullspace(const Field& F, const Mat& A) {
  Echelon e = rref(F, A);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < A.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat N(static_cast<int>(free_cols.size()), A.cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    N(static_cast<int>(k), fc) = 1;
    for (int r = 0; r < e.rank(); ++r) N(static_cast<int>(k), e.pivots[r]) = F.neg(e.R(r, fc));
  }
  return N;
}

Mat row_space(const Field& F, const Mat& A) {
  Echelon e = rref(F, A);
  Mat R(e.rank(), A.cols);
  for (int i = 0; i < e.rank(); ++i)
    for (int j = 0; j < A.cols; ++j) R(i, j) = e.R(i, j);
  return R;
}

std::optional<std::vector<Fe>> solve(const Field& F, const Mat& A, const std::vector<Fe>& b) {
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve: rhs length");
  Mat aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i];
  }
  Echelon e = rref(F, aug);
  if (!e.pivots.empty() && e.pivots.back() == A.cols) return std::nullopt;
  std::vector<Fe> x(A.cols, 0);
  for (int r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.R(r, A.cols);
  return x;
}

bool rows_in_span(const Field& F, const Mat& A, const Mat& B) {
  if (B.rows == 0) return true;
  if (A.rows == 0) return B.is_zero();
  return rank(F, vstack(A, B)) == rank(F, A);
}

Mat restrict_to_rows(const Field& F, const Mat& B, const Mat& X) {
  // Solve Y B = B X row by row: y B = (b X)  <=>  B^T y^T = (b X)^T.
  Mat BX = mat_mul(F, B, X);
  Mat Bt = transpose(B);
  Mat Y(B.rows, B.rows);
  for (int i = 0; i < B.rows; ++i) {
    std::vector<Fe> rhs(B.cols);
    for (int j = 0; j < B.cols; ++j) rhs[j] = BX(i, j);
    auto y = solve(F, Bt, rhs);
    if (!y) throw std::runtime_error("restrict_to_rows: subspace not stable");
    for (int j = 0; j < B.rows; ++j) Y(i, j) = (*y)[j];
  }
  return Y;
}

std::string to_string(const Field& F, const Mat& A) {
  std::string s = "[";
  for (int i = 0; i < A.rows; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < A.cols; ++j) {
      if (j) s += ",";
      s += F.to_string(A(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace prophecke
