#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sympf/error.hpp"
#include "sympf/scalar.hpp"

namespace sympf {

// Dense row-major matrix over the scalar mode. Dimensions here are tiny
// (at most 12x12), so plain Gaussian elimination over exact rationals is
// both fast enough and exact.
template <typename S>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, S(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const S& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw Error(Errc::kDimension, "matrix product dimension mismatch");
    Mat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const S& a = at(i, k);
        if (ScalarTraits<S>::is_zero(a, 0.0)) continue;
        for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
      }
    return out;
  }

  Mat operator-() const {
    Mat out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool approx_equal(const Mat& other, double eps) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
      if (!ScalarTraits<S>::equal(data_[i], other.data_[i], eps)) return false;
    return true;
  }

  // Determinant by elimination with division; pivots are chosen by first
  // nonzero entry in exact mode and by largest magnitude in float mode.
  S determinant(double eps = kDefaultEps) const {
    if (rows_ != cols_) throw Error(Errc::kDimension, "determinant of non-square matrix");
    Mat work = *this;
    const int n = rows_;
    S det(1);
    bool negate = false;
    for (int col = 0; col < n; ++col) {
      int piv = pick_pivot(work, col, col, eps);
      if (piv < 0) return S(0);
      if (piv != col) {
        work.swap_rows(piv, col);
        negate = !negate;
      }
      const S pivot = work.at(col, col);
      det *= pivot;
      for (int r = col + 1; r < n; ++r) {
        if (ScalarTraits<S>::is_zero(work.at(r, col), 0.0)) continue;
        S factor = work.at(r, col) / pivot;
        for (int c = col; c < n; ++c) work.at(r, c) -= factor * work.at(col, c);
      }
    }
    return negate ? S(-det) : det;
  }

  // Gauss-Jordan inverse; throws kSingularBasis when rank-deficient.
  Mat inverse(double eps = kDefaultEps) const {
    if (rows_ != cols_) throw Error(Errc::kDimension, "inverse of non-square matrix");
    const int n = rows_;
    Mat work = *this;
    Mat inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int piv = pick_pivot(work, col, col, eps);
      if (piv < 0) throw Error(Errc::kSingularBasis, "matrix is singular");
      if (piv != col) {
        work.swap_rows(piv, col);
        inv.swap_rows(piv, col);
      }
      const S pivot = work.at(col, col);
      for (int c = 0; c < n; ++c) {
        work.at(col, c) /= pivot;
        inv.at(col, c) /= pivot;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        S factor = work.at(r, col);
        if (ScalarTraits<S>::is_zero(factor, 0.0)) continue;
        for (int c = 0; c < n; ++c) {
          work.at(r, c) -= factor * work.at(col, c);
          inv.at(r, c) -= factor * inv.at(col, c);
        }
      }
    }
    return inv;
  }

  void swap_rows(int a, int b) {
    for (int c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

 private:
  static int pick_pivot(const Mat& m, int col, int from_row, double eps) {
    if constexpr (ScalarTraits<S>::kExact) {
      for (int r = from_row; r < m.rows_; ++r)
        if (sgn(m.at(r, col)) != 0) return r;
      return -1;
    } else {
      int best = -1;
      double best_mag = eps;
      for (int r = from_row; r < m.rows_; ++r) {
        double mag = std::abs(m.at(r, col));
        if (mag > best_mag) {
          best_mag = mag;
          best = r;
        }
      }
      return best;
    }
  }

  int rows_, cols_;
  std::vector<S> data_;
};

// Column vector helper used by basis code.
template <typename S>
using Vec = std::vector<S>;

template <typename S>
Vec<S> mat_vec(const Mat<S>& m, const Vec<S>& v) {
  Vec<S> out(static_cast<size_t>(m.rows()), S(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

// v^T M w, the bilinear pairing used for symplectic-basis checks.
template <typename S>
S bilinear(const Vec<S>& v, const Mat<S>& m, const Vec<S>& w) {
  S out(0);
  for (int i = 0; i < m.rows(); ++i) {
    if (ScalarTraits<S>::is_zero(v[i], 0.0)) continue;
    S row(0);
    for (int j = 0; j < m.cols(); ++j) row += m.at(i, j) * w[j];
    out += v[i] * row;
  }
  return out;
}

}  // namespace sympf
