#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "sympf/invariants.hpp"
#include "sympf/symplectic.hpp"

namespace sympf {

// The four orbit families of S(4,R)/Sp(4): the singleton scalar multiples of
// J with positive/negative scale, and the (p, q) level sets excluding them.
enum class OrbitFamily { kJPlus, kJMinus, kAPlus, kAMinus };

inline const char* family_name(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::kJPlus: return "J+";
    case OrbitFamily::kJMinus: return "J-";
    case OrbitFamily::kAPlus: return "A+";
    default: return "A-";
  }
}

template <typename S>
struct OrbitLabel {
  OrbitFamily family;
  S p;                 // Pfaffian
  std::optional<S> q;  // sum function; absent for the singleton J families

  bool approx_equal(const OrbitLabel& other, double eps) const {
    if (family != other.family) return false;
    if (!ScalarTraits<S>::equal(p, other.p, eps)) return false;
    if (q.has_value() != other.q.has_value()) return false;
    if (q && !ScalarTraits<S>::equal(*q, *other.q, eps)) return false;
    return true;
  }
};

namespace detail4 {

// Named accessors for the six independent entries of a 4x4 skew matrix,
// in the conventional (a b c / d e / f) upper-triangle order.
template <typename S>
struct Entries {
  S a, b, c, d, e, f;
  explicit Entries(const SkewMatrix<S>& m)
      : a(m(0, 1)), b(m(0, 2)), c(m(0, 3)), d(m(1, 2)), e(m(1, 3)), f(m(2, 3)) {}
};

template <typename S>
void require_dim2(const SkewMatrix<S>& m, const char* op) {
  if (m.half_dim() != 2) throw Error(Errc::kDimension, std::string(op) + " requires a 4x4 form");
}

}  // namespace detail4

template <typename S>
OrbitLabel<S> classify(const SkewMatrix<S>& a, double eps = kDefaultEps) {
  detail4::require_dim2(a, "classify");
  const S p = pfaffian(a, eps);
  if (ScalarTraits<S>::is_zero(p, eps)) throw Error(Errc::kDegenerateForm, "classify: Pf(A) = 0");

  const detail4::Entries<S> v(a);
  const bool scalar_multiple = ScalarTraits<S>::is_zero(v.b, eps) && ScalarTraits<S>::is_zero(v.c, eps) &&
                               ScalarTraits<S>::is_zero(v.d, eps) && ScalarTraits<S>::is_zero(v.e, eps) &&
                               ScalarTraits<S>::equal(v.a, v.f, eps);
  if (scalar_multiple) {
    const bool positive = ScalarTraits<S>::sign(v.a) > 0;
    return {positive ? OrbitFamily::kJPlus : OrbitFamily::kJMinus, p, std::nullopt};
  }
  const bool positive = ScalarTraits<S>::sign(p) > 0;
  return {positive ? OrbitFamily::kAPlus : OrbitFamily::kAMinus, p, sum_function(a)};
}

template <typename S>
bool same_orbit(const SkewMatrix<S>& a, const SkewMatrix<S>& b, double eps = kDefaultEps) {
  return classify(a, eps).approx_equal(classify(b, eps), eps);
}

// ---------------------------------------------------------------------------
// The explicit reduction matrices. Each is a fixed element of Sp(4) (or a
// one-parameter family of them) that moves a form with its first nonzero
// off-pair entry in a given slot to one with a nonzero (1,3)-entry.

// Swaps the two symplectic coordinate pairs: e1,e2 <-> e3,e4.
template <typename S>
SymplecticMatrix<S> pair_swap() {
  Mat<S> m(4, 4);
  m.at(0, 2) = S(1);
  m.at(1, 3) = S(1);
  m.at(2, 0) = S(1);
  m.at(3, 1) = S(1);
  return SymplecticMatrix<S>(std::move(m));
}

// Rotates the second pair by J0 (e3 -> -e4, e4 -> e3), moving a nonzero
// (1,4)-entry into the (1,3) slot.
template <typename S>
SymplecticMatrix<S> pair_rotation() {
  Mat<S> m = Mat<S>::identity(4);
  m.at(2, 2) = S(0);
  m.at(3, 3) = S(0);
  m.at(2, 3) = S(1);
  m.at(3, 2) = S(-1);
  return SymplecticMatrix<S>(std::move(m));
}

// Reduction for forms with b = c = d = 0, e != 0 (requires a != 0).
template <typename S>
SymplecticMatrix<S> case4_reduction(const S& a, const S& e) {
  if (ScalarTraits<S>::sign(a) == 0 || ScalarTraits<S>::sign(e) == 0)
    throw Error(Errc::kDomain, "case4_reduction requires a != 0 and e != 0");
  Mat<S> m(4, 4);
  m.at(0, 1) = e / a;
  m.at(1, 0) = -a / e;
  m.at(1, 3) = a / e;
  m.at(2, 3) = S(1);
  m.at(3, 1) = S(1);
  m.at(3, 2) = S(-1);
  return SymplecticMatrix<S>(std::move(m));
}

// Reduction for block forms diag(a J0, (p/a) J0) with p > 0, t = a/sqrt(p),
// valid for t != +-1 (i.e. the form is not a scalar multiple of J).
template <typename S>
SymplecticMatrix<S> case5_reduction_positive(const S& t) {
  const S t2 = t * t;
  if (ScalarTraits<S>::equal(t2, S(1), 0.0)) throw Error(Errc::kDomain, "case5_reduction_positive requires t != +-1");
  const S r = S(1) / (S(1) - t2);
  Mat<S> m(4, 4);
  m.at(0, 0) = S(1);
  m.at(0, 3) = S(1);
  m.at(1, 1) = r;
  m.at(1, 2) = t2 * r;
  m.at(2, 1) = r;
  m.at(2, 2) = r;
  m.at(3, 0) = t2;
  m.at(3, 1) = S(1);
  m.at(3, 2) = S(1);
  m.at(3, 3) = S(1);
  return SymplecticMatrix<S>(std::move(m));
}

// Reduction for block forms diag(a J0, (p/a) J0) with p < 0, t = a/sqrt(-p),
// valid for every t != 0.
template <typename S>
SymplecticMatrix<S> case5_reduction_negative(const S& t) {
  const S t2 = t * t;
  const S r = S(1) / (t2 + S(1));
  Mat<S> m(4, 4);
  m.at(0, 0) = S(1);
  m.at(0, 3) = t2 + S(1);
  m.at(1, 1) = r;
  m.at(1, 2) = -t2 * r * r;
  m.at(2, 1) = S(1);
  m.at(2, 2) = r;
  m.at(3, 0) = -t2 * r;
  m.at(3, 1) = S(1);
  m.at(3, 2) = r;
  m.at(3, 3) = S(1);
  return SymplecticMatrix<S>(std::move(m));
}

// ---------------------------------------------------------------------------
// Explicit symplectic bases for the two base positions of the reduction.

// Basis for a 4x4 form with b != 0. Its basis-values come out as
// (0, 1, 0, 0, -1/p, q/p), depending only on the invariants.
template <typename S>
SymplecticBasis<S> case1_basis(const SkewMatrix<S>& m, double eps = kDefaultEps) {
  detail4::require_dim2(m, "case1_basis");
  const detail4::Entries<S> v(m);
  if (ScalarTraits<S>::is_zero(v.b, eps)) throw Error(Errc::kDomain, "case1_basis requires a nonzero (1,3)-entry");
  const S p = v.a * v.f - v.b * v.e + v.c * v.d;
  if (ScalarTraits<S>::sign(p) == 0) throw Error(Errc::kDegenerateForm, "case1_basis: Pf(A) = 0");
  std::vector<Vec<S>> vecs = {
      {S(1), S(0), S(0), S(0)},
      {S(0), S(0), S(1) / v.b, S(0)},
      {-v.d / v.b, S(1), -v.a / v.b, S(0)},
      {-v.f / p, S(0), v.c / p, -v.b / p},
  };
  return SymplecticBasis<S>(m, std::move(vecs), eps);
}

// Basis for a 4x4 form with b = 0, c != 0; same basis-values as case 1.
template <typename S>
SymplecticBasis<S> case2_basis(const SkewMatrix<S>& m, double eps = kDefaultEps) {
  detail4::require_dim2(m, "case2_basis");
  const detail4::Entries<S> v(m);
  if (ScalarTraits<S>::is_zero(v.c, eps)) throw Error(Errc::kDomain, "case2_basis requires a nonzero (1,4)-entry");
  const S denom = v.a * v.f + v.c * v.d;
  if (ScalarTraits<S>::sign(denom) == 0) throw Error(Errc::kDegenerateForm, "case2_basis: af + cd = 0");
  std::vector<Vec<S>> vecs = {
      {S(1), S(0), S(0), S(0)},
      {S(0), S(0), S(0), S(1) / v.c},
      {-v.e / v.c, S(1), S(0), -v.a / v.c},
      {-v.f / denom, S(0), v.c / denom, -v.b / denom},
  };
  return SymplecticBasis<S>(m, std::move(vecs), eps);
}

// ---------------------------------------------------------------------------
// Case routing and reduction.

namespace detail4 {

enum class Position { kCase1, kCase2, kCase3, kCase4, kCase5 };

template <typename S>
Position route_case(const SkewMatrix<S>& m, double eps) {
  const Entries<S> v(m);
  if (!ScalarTraits<S>::is_zero(v.b, eps)) return Position::kCase1;
  if (!ScalarTraits<S>::is_zero(v.c, eps)) return Position::kCase2;
  if (!ScalarTraits<S>::is_zero(v.d, eps)) return Position::kCase3;
  if (!ScalarTraits<S>::is_zero(v.e, eps)) return Position::kCase4;
  return Position::kCase5;
}

template <typename S>
S scalar_sqrt(const S& x) {
  if constexpr (ScalarTraits<S>::kExact) {
    throw Error(Errc::kNeedsFloat, "square root is not representable in rational mode");
  } else {
    if (x < 0) throw Error(Errc::kDomain, "square root of a negative scalar");
    return std::sqrt(x);
  }
}

// The case-5 factor for a block form diag(a J0, (p/a) J0); sign of p picks
// the parameter family.
template <typename S>
SymplecticMatrix<S> case5_factor(const S& a, const S& p) {
  if (ScalarTraits<S>::sign(p) > 0) return case5_reduction_positive<S>(a / scalar_sqrt<S>(p));
  return case5_reduction_negative<S>(a / scalar_sqrt<S>(S(-p)));
}

// (Q, A', use_case2_basis): A' = act(Q, A) sits in case 1 or case 2
// position. For witness construction the case-2 position is used as-is,
// since its basis has the same basis-values as the case-1 basis.
template <typename S>
struct WitnessReduction {
  SymplecticMatrix<S> q;
  SkewMatrix<S> reduced;
  bool use_case2;
};

template <typename S>
WitnessReduction<S> reduce_for_witness(const SkewMatrix<S>& m, double eps) {
  const Entries<S> v(m);
  switch (route_case(m, eps)) {
    case Position::kCase1:
      return {SymplecticMatrix<S>::identity(2), m, false};
    case Position::kCase2:
      return {SymplecticMatrix<S>::identity(2), m, true};
    case Position::kCase3: {
      SymplecticMatrix<S> q = pair_swap<S>();
      return {q, act(q, m), true};
    }
    case Position::kCase4: {
      SymplecticMatrix<S> q = case4_reduction<S>(v.a, v.e);
      return {q, act(q, m), false};
    }
    default: {
      const S p = v.a * v.f;
      SymplecticMatrix<S> q = case5_factor<S>(v.a, p);
      return {q, act(q, m), false};
    }
  }
}

}  // namespace detail4

// Produces (Q, A') with A' = act(Q, A) having a nonzero (1,3)-entry, i.e.
// in case-1 position. Fails for scalar multiples of J (singleton orbits,
// nothing to reduce) and for degenerate forms.
template <typename S>
std::pair<SymplecticMatrix<S>, SkewMatrix<S>> reduce_to_case1(const SkewMatrix<S>& m, double eps = kDefaultEps) {
  detail4::require_dim2(m, "reduce_to_case1");
  const OrbitLabel<S> label = classify(m, eps);  // raises on Pf = 0
  if (label.family == OrbitFamily::kJPlus || label.family == OrbitFamily::kJMinus)
    throw Error(Errc::kScalarMultiple, "reduce_to_case1: scalar multiples of J form singleton orbits");

  detail4::WitnessReduction<S> red = detail4::reduce_for_witness(m, eps);
  if (red.use_case2) {
    // Rotate the second pair to move the (1,4)-entry into the (1,3) slot.
    SymplecticMatrix<S> rot = pair_rotation<S>();
    red.reduced = act(rot, red.reduced);
    red.q = SymplecticMatrix<S>(red.q.matrix() * rot.matrix(), eps);
  }
  if (ScalarTraits<S>::is_zero(red.reduced(0, 2), eps))
    throw Error(Errc::kInternal, "reduce_to_case1: reduced form has a vanishing (1,3)-entry");
  return {std::move(red.q), std::move(red.reduced)};
}

// Certificate that act(witness, target) = source.
template <typename S>
struct WitnessCertificate {
  SkewMatrix<S> source;
  SkewMatrix<S> target;
  SymplecticMatrix<S> witness;
  bool verified = false;
};

// Constructs an explicit symplectomorphism carrying B to A when the two
// forms lie in the same orbit. For the singleton J orbits A = B and the
// identity is returned; otherwise both forms are reduced to a base position,
// glued through their explicit bases, and the reductions undone. Throws
// kNeedsFloat in rational mode when either form requires the sqrt-bearing
// case-5 factor.
template <typename S>
WitnessCertificate<S> witness(const SkewMatrix<S>& a, const SkewMatrix<S>& b, double eps = kDefaultEps) {
  const OrbitLabel<S> la = classify(a, eps);
  const OrbitLabel<S> lb = classify(b, eps);
  if (!la.approx_equal(lb, eps)) {
    std::string msg;
    if (!ScalarTraits<S>::equal(la.p, lb.p, eps))
      msg = "pfaffian " + scalar_to_string(la.p) + " != " + scalar_to_string(lb.p);
    else if (la.q && lb.q && !ScalarTraits<S>::equal(*la.q, *lb.q, eps))
      msg = "sum function " + scalar_to_string(*la.q) + " != " + scalar_to_string(*lb.q);
    else
      msg = std::string("family ") + family_name(la.family) + " != " + family_name(lb.family);
    throw Error(Errc::kDifferentOrbit, "forms lie in different orbits: " + msg);
  }

  if (la.family == OrbitFamily::kJPlus || la.family == OrbitFamily::kJMinus) {
    SymplecticMatrix<S> id = SymplecticMatrix<S>::identity(2);
    if (!act(id, b).approx_equal(a, eps))
      throw Error(Errc::kInternal, "witness: scalar-multiple forms with equal labels differ entrywise");
    return {a, b, std::move(id), true};
  }

  detail4::WitnessReduction<S> ra = detail4::reduce_for_witness(a, eps);
  detail4::WitnessReduction<S> rb = detail4::reduce_for_witness(b, eps);
  SymplecticBasis<S> basis_a = ra.use_case2 ? case2_basis(ra.reduced, eps) : case1_basis(ra.reduced, eps);
  SymplecticBasis<S> basis_b = rb.use_case2 ? case2_basis(rb.reduced, eps) : case1_basis(rb.reduced, eps);

  SymplecticMatrix<S> glue = equivalence_from_bases(basis_a, basis_b, eps);
  SymplecticMatrix<S> w(rb.q.matrix() * glue.matrix() * ra.q.inverse(eps).matrix(), eps);

  if (!act(w, b).approx_equal(a, eps))
    throw Error(Errc::kInternal, "witness: postcondition act(P, B) = A failed verification");
  return {a, b, std::move(w), true};
}

// Rational-mode entry point with the documented case-5 degradation: exact
// whenever the reduction stays rational, otherwise recomputed in float mode.
struct WitnessOutcome {
  std::optional<WitnessCertificate<Rational>> exact;
  std::optional<WitnessCertificate<double>> degraded;
  bool is_degraded() const { return degraded.has_value(); }
};

inline SkewMatrix<double> to_float(const SkewMatrix<Rational>& m) {
  std::vector<double> upper;
  upper.reserve(m.upper().size());
  for (const Rational& x : m.upper()) upper.push_back(x.get_d());
  return SkewMatrix<double>::from_upper(m.half_dim(), std::move(upper));
}

inline WitnessOutcome witness_with_fallback(const SkewMatrix<Rational>& a, const SkewMatrix<Rational>& b,
                                            double eps = kDefaultEps) {
  WitnessOutcome outcome;
  try {
    outcome.exact = witness<Rational>(a, b, eps);
  } catch (const Error& err) {
    if (err.code() != Errc::kNeedsFloat) throw;
    outcome.degraded = witness<double>(to_float(a), to_float(b), eps);
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Orbit geometry (float mode; the maps involve square roots).

enum class OrbitShape { kSphereTimesPlane, kPuncturedPlaneTimesPlane, kBoundary };

inline const char* shape_name(OrbitShape s) {
  switch (s) {
    case OrbitShape::kSphereTimesPlane: return "sphere_x_plane";
    case OrbitShape::kPuncturedPlaneTimesPlane: return "punctured_plane_x_plane";
    default: return "boundary";
  }
}

struct OrbitGeometry {
  double p = 0;
  double q = 0;
  double delta = 0;  // q^2/4 - p
  OrbitShape shape = OrbitShape::kBoundary;

  static OrbitGeometry from(double p, double q, double eps = kDefaultEps) {
    OrbitGeometry g;
    g.p = p;
    g.q = q;
    g.delta = q * q / 4.0 - p;
    if (std::abs(g.delta) <= eps)
      g.shape = OrbitShape::kBoundary;
    else
      g.shape = g.delta > 0 ? OrbitShape::kSphereTimesPlane : OrbitShape::kPuncturedPlaneTimesPlane;
    return g;
  }
};

// Parametrization of D_delta = {be - cd <= delta} for delta > 0 from the
// closed unit disk times the plane. Boundary of the disk maps onto
// be - cd = delta.
inline std::array<double, 4> orbit_map_positive_delta(double x, double y, double z, double w, double delta,
                                                      double eps = kDefaultEps) {
  if (delta <= 0) throw Error(Errc::kDomain, "orbit_map_positive_delta requires delta > 0");
  if (x * x + y * y > 1.0 + eps) throw Error(Errc::kDomain, "orbit_map_positive_delta requires x^2 + y^2 <= 1");
  const double s = std::sqrt(z * z + w * w + delta);
  return {x * s + z, w + y * s, w - y * s, x * s - z};
}

// Parametrization of D_delta for delta < 0 from the plane times the
// punctured closed unit disk.
inline std::array<double, 4> orbit_map_negative_delta(double x, double y, double z, double w, double delta,
                                                      double eps = kDefaultEps) {
  if (delta >= 0) throw Error(Errc::kDomain, "orbit_map_negative_delta requires delta < 0");
  const double r = z * z + w * w;
  if (r <= eps * eps) throw Error(Errc::kDomain, "orbit_map_negative_delta requires (z, w) != (0, 0)");
  if (r > 1.0 + eps) throw Error(Errc::kDomain, "orbit_map_negative_delta requires z^2 + w^2 <= 1");
  const double s = std::sqrt(x * x + y * y - delta);
  return {x + z * s / r, w * s / r + y, w * s / r - y, x - z * s / r};
}

enum class Sheet { kUpper, kLower };  // upper: a >= f

// Completes (b, c, d, e) in D_delta to a full form with the requested
// invariants (p, q). On the boundary both sheets coincide (a = f = q/2).
inline SkewMatrix<double> lift_to_orbit(const std::array<double, 4>& bcde, double p, double q, Sheet sheet,
                                        double eps = kDefaultEps) {
  const double delta = q * q / 4.0 - p;
  const auto [b, c, d, e] = bcde;
  double radicand = delta - (b * e - c * d);
  if (radicand < -eps)
    throw Error(Errc::kDomain, "lift_to_orbit: be - cd exceeds delta, point lies outside the orbit region");
  if (radicand < 0) radicand = 0;
  const double root = std::sqrt(radicand);
  const double a = sheet == Sheet::kUpper ? q / 2.0 + root : q / 2.0 - root;
  const double f = q - a;
  return SkewMatrix<double>::from_upper(2, {a, b, c, d, e, f});
}

}  // namespace sympf
