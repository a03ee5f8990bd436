#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sympf/matrix.hpp"
#include "sympf/pfaffian.hpp"
#include "sympf/skew.hpp"

namespace sympf {

template <typename S>
Mat<S> standard_j_dense(int half_dim) {
  return SkewMatrix<S>::standard(half_dim).dense();
}

// P^T J P = J, exactly in rational mode, entrywise within eps in float mode.
template <typename S>
bool is_symplectic(const Mat<S>& p, double eps = kDefaultEps) {
  if (p.rows() != p.cols()) throw Error(Errc::kDimension, "symplectic candidates must be square");
  if (p.rows() % 2 != 0) throw Error(Errc::kDimension, "symplectic candidates must have even dimension");
  const Mat<S> j = standard_j_dense<S>(p.rows() / 2);
  return (p.transposed() * j * p).approx_equal(j, eps);
}

// A validated element of Sp(2n). Construction rejects non-members, so any
// held value satisfies P^T J P = J for its mode.
template <typename S>
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Mat<S> entries, double eps = kDefaultEps) : entries_(std::move(entries)) {
    if (!is_symplectic(entries_, eps)) throw Error(Errc::kNotSymplectic, "matrix does not satisfy P^T J P = J");
  }

  static SymplecticMatrix identity(int half_dim) { return SymplecticMatrix(Mat<S>::identity(2 * half_dim)); }

  const Mat<S>& matrix() const { return entries_; }
  int half_dim() const { return entries_.rows() / 2; }
  int dim() const { return entries_.rows(); }

  // P^T is again symplectic; revalidated on return.
  SymplecticMatrix transpose_in_group(double eps = kDefaultEps) const {
    try {
      return SymplecticMatrix(entries_.transposed(), eps);
    } catch (const Error&) {
      throw Error(Errc::kInternal, "transpose of a symplectic matrix failed revalidation");
    }
  }

  // P^{-1} = -J P^T J; no elimination needed.
  SymplecticMatrix inverse(double eps = kDefaultEps) const {
    const Mat<S> j = standard_j_dense<S>(half_dim());
    try {
      return SymplecticMatrix(-(j * entries_.transposed() * j), eps);
    } catch (const Error&) {
      throw Error(Errc::kInternal, "inverse of a symplectic matrix failed revalidation");
    }
  }

 private:
  Mat<S> entries_;
};

// The group action rho(P, A) = P^T A P. The result is assembled from the
// strict upper triangle of the product, so it is skew by representation.
template <typename S>
SkewMatrix<S> act(const SymplecticMatrix<S>& p, const SkewMatrix<S>& a) {
  if (p.dim() != a.dim()) throw Error(Errc::kDimension, "act: dimension mismatch");
  return SkewMatrix<S>::upper_of(p.matrix().transposed() * a.dense() * p.matrix());
}

namespace detail {

// Symplectic transvection I + c w (w^T J): symplectic for every w and c.
template <typename S>
Mat<S> transvection(int half_dim, const std::vector<S>& w, const S& c) {
  const int d = 2 * half_dim;
  const Mat<S> j = standard_j_dense<S>(half_dim);
  std::vector<S> wj(d, S(0));
  for (int col = 0; col < d; ++col)
    for (int i = 0; i < d; ++i) wj[col] += w[i] * j.at(i, col);
  Mat<S> t = Mat<S>::identity(d);
  for (int i = 0; i < d; ++i)
    for (int col = 0; col < d; ++col) t.at(i, col) += c * w[i] * wj[col];
  return t;
}

}  // namespace detail

// Deterministic pseudo-random element of Sp(2n): a product of `complexity`
// generators drawn from three families (transvections, paired 2x2 block
// factors M / (M^T)^{-1}, and whole-pair permutations). All coefficients are
// small rationals, so the product is exact in rational mode.
template <typename S>
SymplecticMatrix<S> random_symplectic(int half_dim, std::uint64_t seed, int complexity) {
  if (half_dim < 1) throw Error(Errc::kDimension, "half-dimension must be positive");
  if (complexity < 1) throw Error(Errc::kDomain, "complexity must be at least 1");
  std::mt19937_64 rng(seed);
  // Plain modulo reduction keeps the stream identical across standard
  // libraries; the slight bias is irrelevant here.
  auto rand_int = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto small_rational = [&]() -> S {
    int num = rand_int(-3, 3);
    int den = rand_int(1, 3);
    return ScalarTraits<S>::from_int(num) / ScalarTraits<S>::from_int(den);
  };

  const int d = 2 * half_dim;
  Mat<S> product = Mat<S>::identity(d);
  for (int step = 0; step < complexity; ++step) {
    Mat<S> g = Mat<S>::identity(d);
    switch (rand_int(0, 2)) {
      case 0: {  // transvection with a sparse direction vector
        std::vector<S> w(d, S(0));
        int support = rand_int(1, 2);
        for (int s = 0; s < support; ++s) w[rand_int(0, d - 1)] = ScalarTraits<S>::from_int(rand_int(-2, 2));
        bool all_zero = true;
        for (const S& x : w)
          if (!ScalarTraits<S>::is_zero(x, 0.0)) all_zero = false;
        if (all_zero) w[rand_int(0, d - 1)] = S(1);
        g = detail::transvection<S>(half_dim, w, small_rational());
        break;
      }
      case 1: {  // 2x2 block M on two x-coordinates, (M^T)^{-1} on the paired y's
        S alpha(1), beta(0), gamma(0), delta(1);
        switch (rand_int(0, 2)) {
          case 0: beta = small_rational(); break;                      // upper shear
          case 1: gamma = small_rational(); break;                     // lower shear
          default: alpha = S(0); beta = S(1); gamma = S(-1); delta = S(0); break;
        }
        if (half_dim == 1) {
          // A single pair: any det-1 block acts symplectically on (x1, y1).
          g.at(0, 0) = alpha; g.at(0, 1) = beta;
          g.at(1, 0) = gamma; g.at(1, 1) = delta;
        } else {
          int pi = rand_int(0, half_dim - 1);
          int pj = rand_int(0, half_dim - 2);
          if (pj >= pi) ++pj;
          const int xi = 2 * pi, yi = 2 * pi + 1, xj = 2 * pj, yj = 2 * pj + 1;
          const S det = alpha * delta - beta * gamma;  // +-1 by construction
          g.at(xi, xi) = alpha; g.at(xi, xj) = beta;
          g.at(xj, xi) = gamma; g.at(xj, xj) = delta;
          // (M^T)^{-1} = (1/det) [[delta, -gamma], [-beta, alpha]]
          g.at(yi, yi) = delta / det;  g.at(yi, yj) = -gamma / det;
          g.at(yj, yi) = -beta / det;  g.at(yj, yj) = alpha / det;
        }
        break;
      }
      default: {  // swap two whole coordinate pairs
        if (half_dim == 1) {
          g.at(0, 0) = S(0); g.at(0, 1) = S(1);
          g.at(1, 0) = S(-1); g.at(1, 1) = S(0);
        } else {
          int pi = rand_int(0, half_dim - 1);
          int pj = rand_int(0, half_dim - 2);
          if (pj >= pi) ++pj;
          for (int off = 0; off < 2; ++off) {
            g.at(2 * pi + off, 2 * pi + off) = S(0);
            g.at(2 * pj + off, 2 * pj + off) = S(0);
            g.at(2 * pi + off, 2 * pj + off) = S(1);
            g.at(2 * pj + off, 2 * pi + off) = S(1);
          }
        }
        break;
      }
    }
    product = product * g;
  }
  return SymplecticMatrix<S>(std::move(product));
}

// An ordered basis v_1..v_2n that puts A into the standard pattern:
// v_{2i-1}^T A v_{2i} = 1 and all other pairings (i < j) vanish.
template <typename S>
class SymplecticBasis {
 public:
  SymplecticBasis(SkewMatrix<S> form, std::vector<Vec<S>> vectors, double eps = kDefaultEps)
      : form_(std::move(form)), vectors_(std::move(vectors)) {
    const int d = form_.dim();
    if (static_cast<int>(vectors_.size()) != d)
      throw Error(Errc::kDimension, "a symplectic basis needs 2n vectors");
    const Mat<S> dense = form_.dense();
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const S pairing = bilinear(vectors_[i], dense, vectors_[j]);
        const S expected = (j == i + 1 && i % 2 == 0) ? S(1) : S(0);
        if (!ScalarTraits<S>::equal(pairing, expected, eps))
          throw Error(Errc::kDomain, "vectors do not form a symplectic basis for the form (pairing " +
                                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    if (ScalarTraits<S>::is_zero(column_matrix().determinant(eps), eps))
      throw Error(Errc::kSingularBasis, "basis vectors are linearly dependent");
  }

  int half_dim() const { return form_.half_dim(); }
  const SkewMatrix<S>& form() const { return form_; }
  const std::vector<Vec<S>>& vectors() const { return vectors_; }

  Mat<S> column_matrix() const {
    const int d = form_.dim();
    Mat<S> m(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) m.at(i, j) = vectors_[j][i];
    return m;
  }

 private:
  SkewMatrix<S> form_;
  std::vector<Vec<S>> vectors_;
};

// Modified Gram-Schmidt for a skew form. Pairs off the lowest-index
// remaining vector with the lowest-index partner of nonzero pairing, scales
// the partner so the pairing is 1, and projects the rest A-orthogonally to
// the chosen pair. Deterministic, so outputs are stable for golden tests.
template <typename S>
SymplecticBasis<S> symplectic_gram_schmidt(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  const int d = a.dim();
  const Mat<S> dense = a.dense();

  std::vector<Vec<S>> pool;
  for (int i = 0; i < d; ++i) {
    Vec<S> e(d, S(0));
    e[i] = S(1);
    pool.push_back(std::move(e));
  }

  std::vector<Vec<S>> basis;
  while (!pool.empty()) {
    // Drop vectors annihilated by earlier projections.
    size_t lead = 0;
    auto nonzero_vec = [&](const Vec<S>& v) {
      for (const S& x : v)
        if (!ScalarTraits<S>::is_zero(x, eps)) return true;
      return false;
    };
    while (lead < pool.size() && !nonzero_vec(pool[lead])) ++lead;
    if (lead == pool.size()) break;
    Vec<S> v = pool[lead];

    int partner = -1;
    for (size_t j = lead + 1; j < pool.size(); ++j) {
      if (!ScalarTraits<S>::is_zero(bilinear(v, dense, pool[j]), eps)) {
        partner = static_cast<int>(j);
        break;
      }
    }
    if (partner < 0)
      throw Error(Errc::kDegenerateForm, "form is degenerate: no pairing partner found (Pf = 0)");

    Vec<S> w = pool[partner];
    const S scale = bilinear(v, dense, w);
    for (S& x : w) x /= scale;

    std::vector<Vec<S>> next;
    for (size_t j = 0; j < pool.size(); ++j) {
      if (j == lead || static_cast<int>(j) == partner) continue;
      Vec<S> u = pool[j];
      const S beta = bilinear(v, dense, u);
      const S alpha = bilinear(w, dense, u);
      for (int i = 0; i < d; ++i) u[i] += alpha * v[i] - beta * w[i];
      next.push_back(std::move(u));
    }
    basis.push_back(std::move(v));
    basis.push_back(std::move(w));
    pool = std::move(next);
  }

  if (static_cast<int>(basis.size()) != d)
    throw Error(Errc::kDegenerateForm, "form is degenerate: symplectic basis is incomplete");
  return SymplecticBasis<S>(a, std::move(basis), eps);
}

// The ordered tuple (v_i^T J v_j) for i < j, lexicographic; n(2n-1) entries.
template <typename S>
struct BasisValues {
  int n = 0;
  std::vector<S> values;

  friend bool operator==(const BasisValues&, const BasisValues&) = default;
};

template <typename S>
BasisValues<S> basis_values(const SymplecticBasis<S>& basis) {
  const int d = 2 * basis.half_dim();
  const Mat<S> j = standard_j_dense<S>(basis.half_dim());
  BasisValues<S> out;
  out.n = basis.half_dim();
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) out.values.push_back(bilinear(basis.vectors()[a], j, basis.vectors()[b]));
  return out;
}

// Equivalence Lemma, constructively: if two symplectic bases (for A and B)
// have equal basis-values, the change of basis P v_i = w_i is symplectic and
// pulls B back to A. The postcondition act(P, B) = A is checked before the
// matrix is returned.
template <typename S>
SymplecticMatrix<S> equivalence_from_bases(const SymplecticBasis<S>& basis_a, const SymplecticBasis<S>& basis_b,
                                           double eps = kDefaultEps) {
  if (basis_a.half_dim() != basis_b.half_dim())
    throw Error(Errc::kDimension, "equivalence_from_bases: dimension mismatch");
  const BasisValues<S> lhs = basis_values(basis_a);
  const BasisValues<S> rhs = basis_values(basis_b);
  for (size_t i = 0; i < lhs.values.size(); ++i)
    if (!ScalarTraits<S>::equal(lhs.values[i], rhs.values[i], eps))
      throw Error(Errc::kBasisValuesMismatch,
                  "basis-values differ at index " + std::to_string(i + 1) + ": " +
                      scalar_to_string(lhs.values[i]) + " vs " + scalar_to_string(rhs.values[i]));

  const Mat<S> v = basis_a.column_matrix();
  const Mat<S> w = basis_b.column_matrix();
  Mat<S> p = w * v.inverse(eps);

  SymplecticMatrix<S> out(std::move(p), eps);
  if (!act(out, basis_b.form()).approx_equal(basis_a.form(), eps))
    throw Error(Errc::kInternal, "equivalence_from_bases: postcondition act(P, B) = A failed");
  return out;
}

}  // namespace sympf
