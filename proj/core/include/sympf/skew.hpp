#pragma once

#include <utility>
#include <vector>

#include "sympf/matrix.hpp"
#include "sympf/scalar.hpp"

namespace sympf {

// 2n x 2n skew-symmetric matrix. Only the strict upper triangle is stored
// (row-major), so A^T = -A and a zero diagonal hold by representation.
template <typename S>
class SkewMatrix {
 public:
  explicit SkewMatrix(int half_dim)
      : n_(half_dim), upper_(static_cast<size_t>(half_dim) * (2 * half_dim - 1), S(0)) {
    if (half_dim < 1) throw Error(Errc::kDimension, "half-dimension must be positive");
  }

  static SkewMatrix from_upper(int half_dim, std::vector<S> upper) {
    SkewMatrix m(half_dim);
    if (upper.size() != m.upper_.size())
      throw Error(Errc::kDimension, "upper triangle has wrong length for the given dimension");
    m.upper_ = std::move(upper);
    return m;
  }

  // The standard form J = diag(J0, ..., J0).
  static SkewMatrix standard(int half_dim) {
    SkewMatrix m(half_dim);
    for (int i = 0; i < half_dim; ++i) m.set(2 * i, 2 * i + 1, S(1));
    return m;
  }

  int half_dim() const { return n_; }
  int dim() const { return 2 * n_; }

  S operator()(int i, int j) const {
    if (i == j) return S(0);
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
  }

  void set(int i, int j, S value) {
    if (i == j) throw Error(Errc::kIndexOutOfRange, "diagonal of a skew matrix is identically zero");
    if (i < j)
      upper_[index(i, j)] = std::move(value);
    else
      upper_[index(j, i)] = -std::move(value);
  }

  const std::vector<S>& upper() const { return upper_; }

  Mat<S> dense() const {
    Mat<S> m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j) {
        m.at(i, j) = (*this)(i, j);
        m.at(j, i) = -m.at(i, j);
      }
    return m;
  }

  // Strict upper triangle of a dense matrix; the lower triangle is ignored,
  // so the result is skew-symmetric whatever `m` was.
  static SkewMatrix upper_of(const Mat<S>& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
      throw Error(Errc::kDimension, "skew matrix must be square of even dimension");
    SkewMatrix out(m.rows() / 2);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i + 1; j < m.cols(); ++j) out.set(i, j, m.at(i, j));
    return out;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.n_ == b.n_ && a.upper_ == b.upper_;
  }

  bool approx_equal(const SkewMatrix& other, double eps) const {
    if (n_ != other.n_) return false;
    for (size_t i = 0; i < upper_.size(); ++i)
      if (!ScalarTraits<S>::equal(upper_[i], other.upper_[i], eps)) return false;
    return true;
  }

 private:
  size_t index(int i, int j) const {
    // Row i starts after rows 0..i-1, row r holding (2n-1-r) entries.
    const int d = dim();
    return static_cast<size_t>(i) * (2 * d - i - 1) / 2 + (j - i - 1);
  }

  int n_;
  std::vector<S> upper_;
};

// Tag for the standard form in file formats; materializes to J.
struct StandardJ {
  int n;
  template <typename S>
  SkewMatrix<S> materialize() const {
    return SkewMatrix<S>::standard(n);
  }
};

// s(A) = sum of the (2i-1, 2i) entries, one per symplectic coordinate pair.
template <typename S>
S sum_function(const SkewMatrix<S>& a) {
  S total(0);
  for (int i = 0; i < a.half_dim(); ++i) total += a(2 * i, 2 * i + 1);
  return total;
}

}  // namespace sympf
