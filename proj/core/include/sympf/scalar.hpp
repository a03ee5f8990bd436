#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "sympf/error.hpp"

namespace sympf {

// A computation runs either on exact rationals or on binary64 floats; the
// scalar type is a template parameter everywhere and never mixed.
using Rational = mpq_class;

// Zero-comparison tolerance for float mode. Rational mode ignores it.
inline constexpr double kDefaultEps = 1e-9;

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static bool is_zero(const Rational& x, double /*eps*/) { return sgn(x) == 0; }
  static bool equal(const Rational& x, const Rational& y, double /*eps*/) { return x == y; }
  static int sign(const Rational& x) { return sgn(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_int(long v) { return Rational(v); }
  static const char* mode_name() { return "rational"; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static bool is_zero(double x, double eps) { return std::abs(x) <= eps; }
  static bool equal(double x, double y, double eps) { return std::abs(x - y) <= eps; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double to_double(double x) { return x; }
  static double from_int(long v) { return static_cast<double>(v); }
  static const char* mode_name() { return "float"; }
};

// Parses "p/q" or "p" (optionally signed) into a reduced rational with a
// positive denominator. Rejects anything else, including q = 0.
inline Rational rational_from_string(std::string_view text) {
  auto fail = [&] { throw Error(Errc::kParse, "invalid rational literal: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_mag = num;
  bool negative = false;
  if (!num_mag.empty() && (num_mag.front() == '-' || num_mag.front() == '+')) {
    negative = num_mag.front() == '-';
    num_mag.remove_prefix(1);
  }
  if (!digits_only(num_mag) || !digits_only(den)) fail();
  Rational q(std::string(num_mag), 10);
  Rational d(std::string(den), 10);
  if (sgn(d) == 0) fail();
  q /= d;
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

// Canonical text form: "p" when the denominator is 1, else "p/q" reduced.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline std::string double_to_string(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, end);
}

template <typename S>
std::string scalar_to_string(const S& x) {
  if constexpr (ScalarTraits<S>::kExact)
    return rational_to_string(x);
  else
    return double_to_string(x);
}

}  // namespace sympf
