#include "prophecke/intmath.hpp"

#include <cstdlib>
#include <stdexcept>

namespace prophecke {

IMat integer_kernel(const IMat& A, int n) {
  IMat B = A;
  IMat V(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) V[i][i] = 1;
  auto col_swap = [&](int a, int b) {
    for (auto& row : B) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
  };
  auto col_axpy = [&](int dst, int src, long long q) {  // col_dst -= q col_src
    for (auto& row : B) row[dst] -= q * row[src];
    for (auto& row : V) row[dst] -= q * row[src];
  };
  int p = 0;
  for (std::size_t r = 0; r < B.size() && p < n; ++r) {
    while (true) {
      int best = -1;
      for (int j = p; j < n; ++j)
        if (B[r][j] != 0 && (best < 0 || std::llabs(B[r][j]) < std::llabs(B[r][best]))) best = j;
      if (best < 0) break;
      if (best != p) col_swap(best, p);
      bool done = true;
      for (int j = p + 1; j < n; ++j) {
        if (B[r][j] == 0) continue;
        col_axpy(j, p, B[r][j] / B[r][p]);
        if (B[r][j] != 0) done = false;
      }
      if (done) {
        ++p;
        break;
      }
    }
  }
  IMat K;
  for (int j = p; j < n; ++j) {
    std::vector<long long> v(n);
    for (int i = 0; i < n; ++i) v[i] = V[i][j];
    K.push_back(v);
  }
  return K;
}

std::optional<QMat> rational_inverse(const QMat& A) {
  using Q = boost::rational<long long>;
  const int n = static_cast<int>(A.size());
  QMat M = A;
  QMat I(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M[r][c].numerator() != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(M[piv], M[c]);
    std::swap(I[piv], I[c]);
    Q inv = Q(1) / M[c][c];
    for (int j = 0; j < n; ++j) {
      M[c][j] *= inv;
      I[c][j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || M[r][c].numerator() == 0) continue;
      Q f = M[r][c];
      for (int j = 0; j < n; ++j) {
        M[r][j] -= f * M[c][j];
        I[r][j] -= f * I[c][j];
      }
    }
  }
  return I;
}

SmithForm smith_form(const IMat& A, int rows, int cols) {
  IMat M = A;
  IMat U(rows, std::vector<long long>(rows, 0));
  for (int i = 0; i < rows; ++i) U[i][i] = 1;
  auto row_swap = [&](int a, int b) {
    std::swap(M[a], M[b]);
    std::swap(U[a], U[b]);
  };
  auto row_axpy = [&](int dst, int src, long long q) {
    for (int j = 0; j < cols; ++j) M[dst][j] -= q * M[src][j];
    for (int j = 0; j < rows; ++j) U[dst][j] -= q * U[src][j];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& r : M) std::swap(r[a], r[b]);
  };
  auto col_axpy = [&](int dst, int src, long long q) {
    for (auto& r : M) r[dst] -= q * r[src];
  };
  const int k = std::min(rows, cols);
  SmithForm out;
  for (int t = 0; t < k; ++t) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (M[i][j] != 0 && (bi < 0 || std::llabs(M[i][j]) < std::llabs(M[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      if (bi != t) row_swap(bi, t);
      if (bj != t) col_swap(bj, t);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        row_axpy(i, t, M[i][t] / M[t][t]);
        if (M[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        col_axpy(j, t, M[t][j] / M[t][t]);
        if (M[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (M[i][j] % M[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(t, bad, -1);
    }
    if (M[t][t] < 0) {
      for (int j = 0; j < cols; ++j) M[t][j] = -M[t][j];
      for (int j = 0; j < rows; ++j) U[t][j] = -U[t][j];
    }
    out.d.push_back(M[t][t]);
  }
  out.U = U;
  return out;
}

IMat unimodular_inverse(const IMat& U) {
  using Q = boost::rational<long long>;
  QMat Q_(U.size(), std::vector<Q>(U.size()));
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < U.size(); ++j) Q_[i][j] = U[i][j];
  auto inv = rational_inverse(Q_);
  if (!inv) throw std::invalid_argument("unimodular_inverse: singular");
  IMat R(U.size(), std::vector<long long>(U.size()));
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < U.size(); ++j) {
      if ((*inv)[i][j].denominator() != 1) throw std::invalid_argument("unimodular_inverse: not unimodular");
      R[i][j] = (*inv)[i][j].numerator();
    }
  return R;
}

}  // namespace prophecke
