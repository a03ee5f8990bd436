#pragma once

#include <vector>

#include "sympf/skew.hpp"

namespace sympf {

namespace detail {

// Signature of a permutation given as an index array, by counting inversions.
inline int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

template <typename S>
void matching_sum(const SkewMatrix<S>& a, std::vector<bool>& used, std::vector<int>& perm, S& total) {
  const int d = a.dim();
  int first = 0;
  while (first < d && used[first]) ++first;
  if (first == d) {
    S term(1);
    for (size_t k = 0; k < perm.size(); k += 2) term *= a(perm[k], perm[k + 1]);
    if (permutation_sign(perm) < 0)
      total -= term;
    else
      total += term;
    return;
  }
  used[first] = true;
  perm.push_back(first);
  for (int j = first + 1; j < d; ++j) {
    if (used[j]) continue;
    used[j] = true;
    perm.push_back(j);
    matching_sum(a, used, perm, total);
    perm.pop_back();
    used[j] = false;
  }
  perm.pop_back();
  used[first] = false;
}

}  // namespace detail

// Reference Pfaffian: sgn-weighted sum of products over all perfect matchings
// {(i1,j1),...,(in,jn)} with i1 < i2 < ... and ik < jk. This normalization
// gives Pf(J) = 1 and, for 4x4, the closed form af - be + cd. Exponential in
// n, so the dimension is capped.
template <typename S>
S pfaffian_oracle(const SkewMatrix<S>& a) {
  if (a.half_dim() > 6)
    throw Error(Errc::kDimension, "pfaffian_oracle supports half-dimension at most 6");
  S total(0);
  std::vector<bool> used(static_cast<size_t>(a.dim()), false);
  std::vector<int> perm;
  perm.reserve(a.dim());
  detail::matching_sum(a, used, perm, total);
  return total;
}

// Production Pfaffian: congruence elimination. Each step clears rows/columns
// 2k and 2k+1 beyond the (2k, 2k+1) pivot using unit-determinant congruences
// E^T M E; a pivot brought in by a row/column swap flips the sign. Exact over
// rationals, O(n^3). Returns 0 for singular input.
template <typename S>
S pfaffian(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  const int d = a.dim();
  Mat<S> m = a.dense();
  S result(1);
  bool negate = false;

  // E = I + c e_src e_dst^T applied as a congruence: col dst += c col src,
  // then row dst += c row src.
  auto add_congruence = [&](int src, int dst, const S& c) {
    for (int i = 0; i < d; ++i) m.at(i, dst) += c * m.at(i, src);
    for (int i = 0; i < d; ++i) m.at(dst, i) += c * m.at(src, i);
  };
  auto swap_congruence = [&](int p, int q) {
    m.swap_rows(p, q);
    for (int i = 0; i < d; ++i) std::swap(m.at(i, p), m.at(i, q));
    negate = !negate;
  };

  for (int k = 0; k + 1 < d; k += 2) {
    int piv = -1;
    if constexpr (ScalarTraits<S>::kExact) {
      for (int j = k + 1; j < d; ++j)
        if (sgn(m.at(k, j)) != 0) {
          piv = j;
          break;
        }
    } else {
      double best = eps;
      for (int j = k + 1; j < d; ++j)
        if (std::abs(m.at(k, j)) > best) {
          best = std::abs(m.at(k, j));
          piv = j;
        }
    }
    if (piv < 0) return S(0);
    if (piv != k + 1) swap_congruence(piv, k + 1);

    const S pivot = m.at(k, k + 1);
    result *= pivot;
    for (int j = k + 2; j < d; ++j) {
      if (!ScalarTraits<S>::is_zero(m.at(k, j), 0.0)) add_congruence(k + 1, j, S(-m.at(k, j) / pivot));
      if (!ScalarTraits<S>::is_zero(m.at(k + 1, j), 0.0)) add_congruence(k, j, S(m.at(k + 1, j) / pivot));
    }
  }
  return negate ? S(-result) : result;
}

// det(A) by plain elimination; kept separate from the Pfaffian so that
// det = Pf^2 is a two-route identity in the test suites.
template <typename S>
S determinant(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  return a.dense().determinant(eps);
}

}  // namespace sympf
