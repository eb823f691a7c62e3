#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tla/poly.hpp"
#include "tla/scalar.hpp"

namespace tla {

// Dense matrix over an exact coefficient type (Scalar is a field, PolyFn a
// ring). Row-major; indices are 0-based throughout the library, printed
// 1-based only at the CLI boundary.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const T& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::domain_error("Mat: shape mismatch");
    Mat r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        if (aik == T(0)) continue;
        for (size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw std::domain_error("Mat: shape mismatch");
    std::vector<T> r(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r[i] = r[i] + at(i, j) * v[j];
    return r;
  }

  bool is_zero() const {
    for (const T& v : a_)
      if (!(v == T(0))) return false;
    return true;
  }

  // Laplace expansion along the first row: division-free, valid over rings.
  T det_laplace() const {
    if (rows_ != cols_) throw std::domain_error("Mat: det of non-square");
    if (rows_ == 0) return T(1);
    if (rows_ == 1) return at(0, 0);
    T sum = T(0);
    for (size_t j = 0; j < cols_; ++j) {
      if (at(0, j) == T(0)) continue;
      Mat minor(rows_ - 1, cols_ - 1);
      for (size_t i = 1; i < rows_; ++i) {
        size_t jj = 0;
        for (size_t k = 0; k < cols_; ++k) {
          if (k == j) continue;
          minor.at(i - 1, jj++) = at(i, k);
        }
      }
      T term = at(0, j) * minor.det_laplace();
      sum = (j % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using ScalarMat = Mat<Scalar>;
using PolyMat = Mat<PolyFn>;

struct RrefResult {
  ScalarMat r;                 // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column per pivot row
  size_t rank = 0;
};

// Exact Gauss-Jordan elimination over the Gaussian rationals.
inline RrefResult rref(ScalarMat m) {
  RrefResult out;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    for (size_t j = 0; j < m.cols(); ++j)
      std::swap(m.at(row, j), m.at(pivot, j));
    Scalar inv = m.at(row, col).inverse();
    for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (size_t j = col; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  out.r = std::move(m);
  return out;
}

inline size_t rank(const ScalarMat& m) { return rref(m).rank; }

// Basis of { x : m x = 0 }, one vector per free column.
inline std::vector<std::vector<Scalar>> kernel_basis(const ScalarMat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols(), Scalar(0));
    v[free] = Scalar(1);
    for (size_t prow = 0; prow < rr.pivots.size(); ++prow)
      v[rr.pivots[prow]] = -rr.r.at(prow, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One exact solution of a x = b, if any.
inline std::optional<std::vector<Scalar>> solve(const ScalarMat& a,
                                                const std::vector<Scalar>& b) {
  ScalarMat aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult rr = rref(aug);
  std::vector<Scalar> x(a.cols(), Scalar(0));
  for (size_t prow = 0; prow < rr.pivots.size(); ++prow) {
    if (rr.pivots[prow] == a.cols()) return std::nullopt;  // inconsistent
    x[rr.pivots[prow]] = rr.r.at(prow, a.cols());
  }
  return x;
}

inline std::optional<ScalarMat> inverse(const ScalarMat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  size_t n = a.rows();
  ScalarMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  RrefResult rr = rref(aug);
  // singular a leaks pivots into the identity half, so rank alone is blind
  if (rr.rank != n || (n && rr.pivots.back() >= n)) return std::nullopt;
  ScalarMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
  return inv;
}

// Minor of m on ordered row set `ri` and column set `ci`.
template <typename T>
Mat<T> submatrix(const Mat<T>& m, const std::vector<size_t>& ri,
                 const std::vector<size_t>& ci) {
  Mat<T> s(ri.size(), ci.size());
  for (size_t i = 0; i < ri.size(); ++i)
    for (size_t j = 0; j < ci.size(); ++j) s.at(i, j) = m.at(ri[i], ci[j]);
  return s;
}

inline PolyMat to_poly(const ScalarMat& m) {
  PolyMat p(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      p.at(i, j) = PolyFn::constant(m.at(i, j));
  return p;
}

// Exact constant matrix extraction; nullopt when any entry is non-constant.
inline std::optional<ScalarMat> to_scalar(const PolyMat& m) {
  ScalarMat s(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m.at(i, j).is_constant()) return std::nullopt;
      s.at(i, j) = m.at(i, j).constant_term();
    }
  return s;
}

}  // namespace tla
