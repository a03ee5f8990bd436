#include "sympf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "sympf/invariants.hpp"

namespace sympf {

namespace {

std::string coordinate_name(char axis, int pair) { return std::string(1, axis) + std::to_string(pair + 1); }

// Roots of the monic real polynomial x^n + c_{n-1} x^{n-1} + ... + c_0.
// Linear and quadratic cases are closed-form; higher degrees use
// Durand-Kerner from the standard (0.4 + 0.9i)^k starting points.
std::vector<double> monic_real_roots(const std::vector<double>& low_coeffs) {
  const int n = static_cast<int>(low_coeffs.size());
  if (n == 1) return {-low_coeffs[0]};
  if (n == 2) {
    const double q = low_coeffs[1], p = low_coeffs[0];
    double disc = q * q - 4 * p;
    if (disc < 0) disc = 0;  // repeated roots land here through rounding
    const double root = std::sqrt(disc);
    return {(-q - root) / 2, (-q + root) / 2};
  }
  using C = std::complex<double>;
  std::vector<C> z(n);
  const C seed(0.4, 0.9);
  C acc(1, 0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  auto eval = [&](C x) {
    C v(1, 0);
    for (int k = n - 1; k >= 0; --k) v = v * x + C(low_coeffs[k], 0);
    return v;
  };
  for (int iter = 0; iter < 200; ++iter) {
    double shift = 0;
    for (int i = 0; i < n; ++i) {
      C denom(1, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (std::abs(denom) == 0) continue;
      C delta = eval(z[i]) / denom;
      z[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }
  std::vector<double> out;
  out.reserve(n);
  for (const C& r : z) out.push_back(r.real());
  return out;
}

}  // namespace

SplitForm SplitForm::from_expressions(std::vector<ExprPtr> coefficients) {
  if (coefficients.empty()) throw Error(Errc::kDomain, "a split form needs at least one coefficient");
  for (size_t i = 0; i < coefficients.size(); ++i) {
    if (!coefficients[i]) throw Error(Errc::kDomain, "null coefficient expression");
    for (const std::string& var : free_variables(*coefficients[i])) {
      if (var == "t") continue;
      if (var == coordinate_name('x', static_cast<int>(i)) || var == coordinate_name('y', static_cast<int>(i)))
        continue;
      throw Error(Errc::kParse, "coefficient f" + std::to_string(i + 1) + " may only reference " +
                                    coordinate_name('x', static_cast<int>(i)) + ", " +
                                    coordinate_name('y', static_cast<int>(i)) + ", and t, but uses '" + var + "'");
    }
  }
  SplitForm form;
  form.coefficients_ = std::move(coefficients);
  return form;
}

SplitForm SplitForm::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, ExprPtr>> entries;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(begin, end - begin + 1);

    const std::string where = " (line " + std::to_string(line_no) + ")";
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) throw Error(Errc::kParse, "expected 'f<k> = <expression>'" + where);
    std::string head = trimmed.substr(0, eq);
    while (!head.empty() && (head.back() == ' ' || head.back() == '\t')) head.pop_back();
    if (head.size() < 2 || head[0] != 'f') throw Error(Errc::kParse, "coefficient name must be f<k>" + where);
    int index = 0;
    for (size_t i = 1; i < head.size(); ++i) {
      if (head[i] < '0' || head[i] > '9') throw Error(Errc::kParse, "coefficient name must be f<k>" + where);
      index = index * 10 + (head[i] - '0');
    }
    if (index < 1) throw Error(Errc::kParse, "coefficient indices start at 1" + where);
    entries.emplace_back(index - 1, parse_expression(trimmed.substr(eq + 1)));
  }
  if (entries.empty()) throw Error(Errc::kParse, "form file defines no coefficients");

  std::vector<ExprPtr> coeffs(entries.size());
  for (auto& [index, e] : entries) {
    if (index >= static_cast<int>(coeffs.size()))
      throw Error(Errc::kParse, "coefficient f" + std::to_string(index + 1) + " leaves gaps; indices must cover 1.." +
                                    std::to_string(coeffs.size()));
    if (coeffs[index]) throw Error(Errc::kParse, "coefficient f" + std::to_string(index + 1) + " defined twice");
    coeffs[index] = std::move(e);
  }
  return from_expressions(std::move(coeffs));
}

std::vector<double> SplitForm::coefficient_values(std::span<const double> point, std::optional<double> t) const {
  const int n = pairs();
  if (static_cast<int>(point.size()) != 2 * n)
    throw Error(Errc::kDimension, "point must have 2n coordinates");
  Env env;
  if (t) env["t"] = *t;
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    env[coordinate_name('x', i)] = point[2 * i];
    env[coordinate_name('y', i)] = point[2 * i + 1];
    out.push_back(evaluate(*coefficients_[i], env));
    env.erase(coordinate_name('x', i));
    env.erase(coordinate_name('y', i));
  }
  return out;
}

PointMatrix matrix_at(const SplitForm& form, std::span<const double> point, std::optional<double> t, double eps) {
  const std::vector<double> values = form.coefficient_values(point, t);
  SkewMatrix<double> m(form.pairs());
  bool degenerate = false;
  for (int i = 0; i < form.pairs(); ++i) {
    m.set(2 * i, 2 * i + 1, values[i]);
    if (std::abs(values[i]) <= eps) degenerate = true;
  }
  return {std::move(m), degenerate};
}

std::vector<double> pointwise_multiset(const SplitForm& form, std::span<const double> point, std::optional<double> t,
                                       double eps) {
  std::vector<double> direct = form.coefficient_values(point, t);
  std::sort(direct.begin(), direct.end());

  const PointMatrix pm = matrix_at(form, point, t, eps);
  const InvariantVector<double> sigma = invariants(pm.matrix, eps);
  std::vector<double> roots = monic_real_roots(sigma.values);
  for (double& r : roots) r = -r;
  std::sort(roots.begin(), roots.end());

  double scale = 1.0;
  for (double v : direct) scale = std::max(scale, std::abs(v));
  // Root recovery is ill-conditioned at repeated roots: a multiplicity-m
  // cluster can only be located to about scale * eps^(1/m). The closed-form
  // degrees stay tight; the iterative path gets the conditioning allowance.
  // A structural error moves roots by O(scale), far beyond either bound.
  const double tol = (direct.size() <= 2 ? 1e-6 : 5e-3) * scale;
  for (size_t i = 0; i < direct.size(); ++i) {
    if (std::abs(direct[i] - roots[i]) > tol)
      throw Error(Errc::kInternal, "pointwise multiset: direct evaluation and polynomial roots disagree (" +
                                       double_to_string(direct[i]) + " vs " + double_to_string(roots[i]) + ")");
  }
  return direct;
}

SampleDomain SampleDomain::uniform(int pairs, double lo, double hi, int res, std::optional<double> t) {
  SampleDomain d;
  d.bounds.assign(static_cast<size_t>(2 * pairs), {lo, hi});
  d.resolution.assign(static_cast<size_t>(2 * pairs), res);
  d.t = t;
  d.validate();
  return d;
}

void SampleDomain::validate() const {
  if (bounds.empty() || bounds.size() != resolution.size())
    throw Error(Errc::kDomain, "sample domain needs matching bounds and resolutions");
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (!(bounds[i][0] < bounds[i][1]))
      throw Error(Errc::kDomain, "sample domain requires lo < hi on every axis");
    if (resolution[i] < 2) throw Error(Errc::kDomain, "sample domain requires at least 2 points per axis");
  }
}

GlobalInvariants global_invariants(const SplitForm& form, const SampleDomain& domain, double eps) {
  domain.validate();
  const int n = form.pairs();
  if (static_cast<int>(domain.bounds.size()) != 2 * n)
    throw Error(Errc::kDimension, "sample domain dimension does not match the form");

  // m and M decompose over coordinate pairs: every f_i only varies on its
  // own (x_i, y_i) plane, and the grid is a product, so each per-pair 2D
  // sweep yields the pair's min/max and the four extremes assemble from
  // those. This is exact for the same grid a full 2n-dimensional sweep
  // would visit.
  struct PairExtremes {
    double min_v, max_v;
    std::array<double, 2> at_min, at_max;
  };
  std::vector<PairExtremes> per_pair;
  Env env;
  if (domain.t) env["t"] = *domain.t;

  for (int i = 0; i < n; ++i) {
    const int ax = 2 * i, ay = 2 * i + 1;
    PairExtremes ext{};
    bool first = true;
    const std::string xname = coordinate_name('x', i), yname = coordinate_name('y', i);
    for (int sx = 0; sx < domain.resolution[ax]; ++sx) {
      const double x = domain.coordinate(ax, sx);
      env[xname] = x;
      for (int sy = 0; sy < domain.resolution[ay]; ++sy) {
        const double y = domain.coordinate(ay, sy);
        env[yname] = y;
        const double v = evaluate(*form.coefficients()[i], env);
        if (std::abs(v) <= eps)
          throw Error(Errc::kVanishingCoefficient,
                      "coefficient f" + std::to_string(i + 1) + " vanishes at (" + xname + ", " + yname + ") = (" +
                          double_to_string(x) + ", " + double_to_string(y) + ")");
        if (first || v < ext.min_v) {
          ext.min_v = v;
          ext.at_min = {x, y};
        }
        if (first || v > ext.max_v) {
          ext.max_v = v;
          ext.at_max = {x, y};
        }
        first = false;
      }
    }
    env.erase(xname);
    env.erase(yname);
    per_pair.push_back(ext);
  }

  GlobalInvariants out;
  out.nowhere_vanishing_witnessed = true;
  // inf_m and inf_M are attained with every pair at its own minimizer;
  // sup_m and sup_M with every pair at its own maximizer.
  out.inf_m = per_pair[0].min_v;
  out.inf_M = per_pair[0].min_v;
  out.sup_m = per_pair[0].max_v;
  out.sup_M = per_pair[0].max_v;
  for (const PairExtremes& ext : per_pair) {
    out.inf_m = std::min(out.inf_m, ext.min_v);
    out.inf_M = std::max(out.inf_M, ext.min_v);
    out.sup_m = std::min(out.sup_m, ext.max_v);
    out.sup_M = std::max(out.sup_M, ext.max_v);
  }
  for (const PairExtremes& ext : per_pair) {
    out.at_inf_m.insert(out.at_inf_m.end(), ext.at_min.begin(), ext.at_min.end());
    out.at_inf_M.insert(out.at_inf_M.end(), ext.at_min.begin(), ext.at_min.end());
    out.at_sup_m.insert(out.at_sup_m.end(), ext.at_max.begin(), ext.at_max.end());
    out.at_sup_M.insert(out.at_sup_M.end(), ext.at_max.begin(), ext.at_max.end());
  }
  return out;
}

GapReport multiset_match(const SplitForm& form1, const SplitForm& form2, const SampleDomain& domain, double eps) {
  return multiset_match(form1, domain.t, form2, domain.t, domain, eps);
}

GapReport multiset_match(const SplitForm& form1, std::optional<double> t1, const SplitForm& form2,
                         std::optional<double> t2, const SampleDomain& domain, double eps) {
  if (form1.pairs() != form2.pairs())
    throw Error(Errc::kDimension, "multiset_match requires forms with the same number of pairs");
  SampleDomain d1 = domain;
  d1.t = t1;
  SampleDomain d2 = domain;
  d2.t = t2;

  GapReport report;
  report.first = global_invariants(form1, d1, eps);
  report.second = global_invariants(form2, d2, eps);

  auto compare = [&](const char* name, double lhs, double rhs) {
    if (std::abs(lhs - rhs) > eps) report.gaps.push_back({name, lhs, rhs});
  };
  compare("inf_m", report.first.inf_m, report.second.inf_m);
  compare("sup_m", report.first.sup_m, report.second.sup_m);
  compare("inf_M", report.first.inf_M, report.second.inf_M);
  compare("sup_M", report.first.sup_M, report.second.sup_M);
  return report;
}

}  // namespace sympf
