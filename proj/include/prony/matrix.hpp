#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "prony/numeric.hpp"

namespace prony {

// Small dense row-major matrix. Sizes here never exceed ~2d-1 <= 11.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, T(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  // Copy with row `skip_row` and column `skip_col` removed.
  Matrix without(int skip_row, int skip_col) const {
    Matrix out(rows_ - 1, cols_ - 1);
    for (int i = 0, oi = 0; i < rows_; ++i) {
      if (i == skip_row) continue;
      for (int j = 0, oj = 0; j < cols_; ++j) {
        if (j == skip_col) continue;
        out(oi, oj++) = (*this)(i, j);
      }
      ++oi;
    }
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Laplace expansion along the first row. Exact up to rounding; used for n <= 4.
template <class T>
T cofactor_determinant(const Matrix<T>& a) {
  const int n = a.rows();
  if (n == 0) return T(1);
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  T det(0);
  for (int j = 0; j < n; ++j) {
    if (a(0, j) == T(0)) continue;
    const T sub = cofactor_determinant(a.without(0, j));
    det += ((j % 2 == 0) ? a(0, j) : -a(0, j)) * sub;
  }
  return det;
}

// Gaussian elimination with partial pivoting.
template <class T>
T lu_determinant(Matrix<T> a) {
  const int n = a.rows();
  T det(1);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    T best = abs_value(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const T v = abs_value(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == T(0)) return T(0);
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      if (f == T(0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

template <class T>
T determinant(const Matrix<T>& a) {
  return a.rows() <= 4 ? cofactor_determinant(a) : lu_determinant(a);
}

// Solves a x = b by partial-pivot elimination. Returns false when singular.
template <class T>
bool lu_solve(Matrix<T> a, std::vector<T>& b) {
  const int n = a.rows();
  for (int k = 0; k < n; ++k) {
    int piv = k;
    T best = abs_value(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const T v = abs_value(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == T(0)) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return true;
}

}  // namespace prony
