#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympf/expr.hpp"
#include "sympf/skew.hpp"

namespace sympf {

// A split symplectic form sum_i f_i(x_i, y_i) dx_i ^ dy_i, each coefficient
// an expression over its own coordinate pair and the optional parameter t.
// The splitness condition is enforced at construction by free-variable
// analysis.
class SplitForm {
 public:
  static SplitForm from_expressions(std::vector<ExprPtr> coefficients);

  // Form-definition text: lines "f<k> = <expression>", '#' comments and
  // blank lines ignored; k must cover 1..n exactly once.
  static SplitForm parse(const std::string& text);

  int pairs() const { return static_cast<int>(coefficients_.size()); }
  const std::vector<ExprPtr>& coefficients() const { return coefficients_; }

  // f_1..f_n at a point (x1, y1, ..., xn, yn).
  std::vector<double> coefficient_values(std::span<const double> point, std::optional<double> t) const;

 private:
  SplitForm() = default;
  std::vector<ExprPtr> coefficients_;
};

// Axis-aligned sample box with a fixed per-axis resolution; grid points are
// cell corners including both bounds.
struct SampleDomain {
  std::vector<std::array<double, 2>> bounds;  // per coordinate, size 2n
  std::vector<int> resolution;                // per coordinate, each >= 2
  std::optional<double> t;

  static SampleDomain uniform(int pairs, double lo, double hi, int res, std::optional<double> t = std::nullopt);
  void validate() const;

  double coordinate(int axis, int step) const {
    const auto [lo, hi] = bounds[axis];
    return lo + (hi - lo) * step / (resolution[axis] - 1);
  }
};

// matrix_at result: the pointwise matrix with a degeneracy flag (some
// coefficient vanished at the point).
struct PointMatrix {
  SkewMatrix<double> matrix;
  bool degenerate = false;
};

// Block-diagonal matrix representation diag(f_1 J0, ..., f_n J0) of the form
// at a point.
PointMatrix matrix_at(const SplitForm& form, std::span<const double> point, std::optional<double> t,
                      double eps = kDefaultEps);

// The multiset {f_1, ..., f_n} at a point, returned sorted ascending.
// Computed twice: directly, and as the negated roots of the monic polynomial
// with coefficients invariants(matrix_at(...)). Disagreement beyond floating
// noise is an internal error.
std::vector<double> pointwise_multiset(const SplitForm& form, std::span<const double> point, std::optional<double> t,
                                       double eps = kDefaultEps);

struct GlobalInvariants {
  double inf_m = 0, sup_m = 0;  // extremes of m(x) = min_i f_i over the grid
  double inf_M = 0, sup_M = 0;  // extremes of M(x) = max_i f_i over the grid
  bool nowhere_vanishing_witnessed = false;
  // Grid points attaining each extremum, in (x1, y1, ..., xn, yn) order.
  std::vector<double> at_inf_m, at_sup_m, at_inf_M, at_sup_M;
};

// Grid approximation of the four global invariants. Every sampled
// coefficient value is checked against zero; a vanishing coefficient aborts
// with the offending location.
GlobalInvariants global_invariants(const SplitForm& form, const SampleDomain& domain, double eps = kDefaultEps);

// Necessary-condition comparison of two forms: any global-invariant gap
// certifies they are not intertwined by a standard-form symplectomorphism;
// agreement is inconclusive.
struct GapReport {
  struct Gap {
    std::string invariant;
    double lhs = 0, rhs = 0;
    double size() const { return lhs > rhs ? lhs - rhs : rhs - lhs; }
  };
  GlobalInvariants first, second;
  std::vector<Gap> gaps;
  bool gap_found() const { return !gaps.empty(); }
};

GapReport multiset_match(const SplitForm& form1, const SplitForm& form2, const SampleDomain& domain,
                         double eps = kDefaultEps);

// As multiset_match, but with a separate parameter value per form (the
// shared domain's t is ignored).
GapReport multiset_match(const SplitForm& form1, std::optional<double> t1, const SplitForm& form2,
                         std::optional<double> t2, const SampleDomain& domain, double eps = kDefaultEps);

}  // namespace sympf
