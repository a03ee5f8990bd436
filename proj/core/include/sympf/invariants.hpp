#pragma once

#include <vector>

#include "sympf/pfaffian.hpp"
#include "sympf/skew.hpp"

namespace sympf {

// [s_0, ..., s_{n-1}]; s_0 = Pf(A) and s_{n-1} = s(A).
template <typename S>
struct InvariantVector {
  int n = 0;
  std::vector<S> values;

  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
  bool approx_equal(const InvariantVector& other, double eps) const {
    if (n != other.n) return false;
    for (size_t i = 0; i < values.size(); ++i)
      if (!ScalarTraits<S>::equal(values[i], other.values[i], eps)) return false;
    return true;
  }
};

// Direct definition of s_k: sum over all k-subsets of coordinate pairs of the
// Pfaffian of A with those pairs deleted. Combinatorial; this is the test
// oracle for the polynomial path below.
template <typename S>
S s_k_direct(const SkewMatrix<S>& a, int k, double eps = kDefaultEps) {
  const int n = a.half_dim();
  if (k < 0 || k > n - 1) throw Error(Errc::kIndexOutOfRange, "s_k index must lie in [0, n-1]");
  if (k == 0) return pfaffian(a, eps);

  // Enumerate k-subsets of {0..n-1} to delete.
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  S total(0);
  while (true) {
    std::vector<bool> deleted(n, false);
    for (int i : subset) deleted[i] = true;
    std::vector<int> keep;
    for (int p = 0; p < n; ++p)
      if (!deleted[p]) {
        keep.push_back(2 * p);
        keep.push_back(2 * p + 1);
      }
    SkewMatrix<S> sub(n - k);
    for (size_t i = 0; i < keep.size(); ++i)
      for (size_t j = i + 1; j < keep.size(); ++j) sub.set(static_cast<int>(i), static_cast<int>(j), a(keep[i], keep[j]));
    total += pfaffian(sub, eps);

    int pos = k - 1;
    while (pos >= 0 && subset[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
  }
  return total;
}

// Coefficients of g(t) = Pf(tJ + A), a monic degree-n polynomial. g is
// sampled at the integer nodes t = 0..n and the coefficients recovered by
// expanding the Lagrange basis; exact over rationals. The leading
// coefficient must come out as 1 and is checked, not returned.
template <typename S>
InvariantVector<S> sigma_k(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  const int n = a.half_dim();

  std::vector<S> nodes, samples;
  for (int j = 0; j <= n; ++j) {
    S t = ScalarTraits<S>::from_int(j);
    SkewMatrix<S> shifted = a;
    for (int i = 0; i < n; ++i) shifted.set(2 * i, 2 * i + 1, a(2 * i, 2 * i + 1) + t);
    nodes.push_back(t);
    samples.push_back(pfaffian(shifted, eps));
  }

  std::vector<S> coeffs(static_cast<size_t>(n) + 1, S(0));
  for (int j = 0; j <= n; ++j) {
    // Expand prod_{m != j} (x - t_m) and the matching denominator.
    // basis[c] holds the coefficient of x^c.
    std::vector<S> basis{S(1)};
    S denom(1);
    for (int m = 0; m <= n; ++m) {
      if (m == j) continue;
      basis.push_back(S(0));
      for (size_t c = basis.size() - 1; c >= 1; --c) basis[c] = basis[c - 1] - nodes[m] * basis[c];
      basis[0] = -nodes[m] * basis[0];
      denom *= nodes[j] - nodes[m];
    }
    S weight = samples[j] / denom;
    for (size_t c = 0; c < basis.size(); ++c) coeffs[c] += weight * basis[c];
  }

  const S& leading = coeffs[n];
  if constexpr (ScalarTraits<S>::kExact) {
    if (leading != 1)
      throw Error(Errc::kInternal, "interpolated Pf(tJ+A) is not monic: leading = " + scalar_to_string(leading));
  } else {
    if (std::abs(leading - 1.0) > 1e-6)
      throw Error(Errc::kInternal, "interpolated Pf(tJ+A) leading coefficient deviates from 1: " + scalar_to_string(leading));
  }

  InvariantVector<S> out;
  out.n = n;
  out.values.assign(coeffs.begin(), coeffs.begin() + n);
  return out;
}

// The production invariant vector. The polynomial route is the production
// path; s_k_direct is the oracle it is tested against.
template <typename S>
InvariantVector<S> invariants(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  return sigma_k(a, eps);
}

}  // namespace sympf
