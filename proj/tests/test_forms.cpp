#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sympf/forms.hpp"
#include "sympf/invariants.hpp"

using namespace sympf;

namespace {

SplitForm form_of(const std::vector<std::string>& sources) {
  std::vector<ExprPtr> coeffs;
  for (const auto& s : sources) coeffs.push_back(parse_expression(s));
  return SplitForm::from_expressions(std::move(coeffs));
}

const char* kRadialFamily =
    "# radial coefficients with a shared parameter\n"
    "f1 = x1^2 + y1^2 + t + 1\n"
    "\n"
    "f2 = x2^2 + y2^2 + t + 1\n";

}  // namespace

TEST_CASE("splitness is enforced per coordinate pair") {
  CHECK(form_of({"x1^2 + y1^2 + 1", "2"}).pairs() == 2);
  CHECK(form_of({"t + 2"}).pairs() == 1);
  CHECK_THROWS_AS(form_of({"x2 + 1", "x2 + 1"}), Error);  // slot 1 may not use x2
  CHECK_THROWS_AS(form_of({"x1 + y2"}), Error);
  try {
    form_of({"1", "x1 + 1"});
    FAIL("expected a splitness violation");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("f2") != std::string::npos);
    CHECK(std::string(err.what()).find("x1") != std::string::npos);
  }
}

TEST_CASE("form files parse with comments and strict index coverage") {
  const SplitForm form = SplitForm::parse(kRadialFamily);
  CHECK(form.pairs() == 2);

  CHECK_THROWS_AS(SplitForm::parse(""), Error);
  CHECK_THROWS_AS(SplitForm::parse("f1 = 1\nf1 = 2\n"), Error);       // duplicate
  CHECK_THROWS_AS(SplitForm::parse("f1 = 1\nf3 = 2\n"), Error);       // gap
  CHECK_THROWS_AS(SplitForm::parse("g1 = 1\n"), Error);               // bad name
  CHECK_THROWS_AS(SplitForm::parse("f1  x1 + 1\n"), Error);           // missing '='
  CHECK_THROWS_AS(SplitForm::parse("f1 = x1 +* 1\n"), Error);         // expression error
}

TEST_CASE("pointwise matrix is block diagonal with coefficient blocks") {
  const SplitForm ones = form_of({"1", "1"});
  const auto at = matrix_at(ones, std::vector<double>{0.3, -2, 5, 7}, std::nullopt);
  CHECK(at.matrix == SkewMatrix<double>::standard(2));
  CHECK_FALSE(at.degenerate);

  const SplitForm family = SplitForm::parse(kRadialFamily);
  const auto origin = matrix_at(family, std::vector<double>{0, 0, 0, 0}, 0.0);
  CHECK(origin.matrix == SkewMatrix<double>::standard(2));

  const SplitForm constants = form_of({"2", "3"});
  const auto at23 = matrix_at(constants, std::vector<double>{1, 1, 1, 1}, std::nullopt);
  CHECK(at23.matrix(0, 1) == 2.0);
  CHECK(at23.matrix(2, 3) == 3.0);
  CHECK(at23.matrix(0, 2) == 0.0);
  const auto inv = invariants(at23.matrix);
  CHECK(inv.values[0] == doctest::Approx(6.0));
  CHECK(inv.values[1] == doctest::Approx(5.0));

  const SplitForm vanishing = form_of({"x1", "1"});
  CHECK(matrix_at(vanishing, std::vector<double>{0, 0, 0, 0}, std::nullopt).degenerate);
  CHECK_FALSE(matrix_at(vanishing, std::vector<double>{1, 0, 0, 0}, std::nullopt).degenerate);
}

TEST_CASE("pointwise multiset: direct values agree with polynomial roots") {
  const SplitForm constants = form_of({"2", "3"});
  CHECK(pointwise_multiset(constants, std::vector<double>{0, 0, 0, 0}, std::nullopt) ==
        std::vector<double>{2.0, 3.0});

  const SplitForm repeated = form_of({"7", "7"});
  CHECK(pointwise_multiset(repeated, std::vector<double>{0, 0, 0, 0}, std::nullopt) ==
        std::vector<double>{7.0, 7.0});

  // Higher-multiplicity clusters exercise the iterative root path, whose
  // accuracy is conditioning-limited but must not be rejected.
  const SplitForm triple = form_of({"7", "7", "7"});
  const auto t3 = pointwise_multiset(triple, std::vector<double>{0, 0, 0, 0, 0, 0}, std::nullopt);
  for (double v : t3) CHECK(v == doctest::Approx(7.0).epsilon(1e-3));
  const SplitForm quad = form_of({"250", "250", "250", "250"});
  const auto t4 = pointwise_multiset(quad, std::vector<double>(8, 0.0), std::nullopt);
  for (double v : t4) CHECK(v == doctest::Approx(250.0).epsilon(1e-2));

  const SplitForm family = SplitForm::parse(kRadialFamily);
  const auto at = pointwise_multiset(family, std::vector<double>{1, 0, 0, 0}, 0.0);
  CHECK(at[0] == doctest::Approx(1.0));
  CHECK(at[1] == doctest::Approx(2.0));
}

TEST_CASE("pointwise multiset property at random points, n up to 3") {
  std::mt19937_64 rng(31337);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto coeff = [&](int i) {
    const std::string xi = "x" + std::to_string(i + 1), yi = "y" + std::to_string(i + 1);
    const int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
    const int c = 1 + static_cast<int>(rng() % 5);
    return std::to_string(a) + "*" + xi + "^2 + " + std::to_string(b) + "*" + yi + " + " + std::to_string(c);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<std::string> sources;
    for (int i = 0; i < n; ++i) sources.push_back(coeff(i));
    const SplitForm form = form_of(sources);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> point;
      for (int k = 0; k < 2 * n; ++k) point.push_back(4 * unit() - 2);
      const std::vector<double> multiset = pointwise_multiset(form, point, std::nullopt);
      std::vector<double> direct = form.coefficient_values(point, std::nullopt);
      std::sort(direct.begin(), direct.end());
      for (int k = 0; k < n; ++k) CHECK(multiset[k] == doctest::Approx(direct[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("global invariants of constant forms") {
  const SplitForm constants = form_of({"2", "3"});
  const auto g = global_invariants(constants, SampleDomain::uniform(2, -5, 5, 4));
  CHECK(g.inf_m == 2.0);
  CHECK(g.sup_m == 2.0);
  CHECK(g.inf_M == 3.0);
  CHECK(g.sup_M == 3.0);
  CHECK(g.nowhere_vanishing_witnessed);
}

TEST_CASE("global invariants of the radial family") {
  const SplitForm family = SplitForm::parse(kRadialFamily);
  const auto g = global_invariants(family, SampleDomain::uniform(2, -10, 10, 11, 0.0));
  CHECK(g.inf_m == doctest::Approx(1.0));       // attained at the origin
  CHECK(g.inf_M == doctest::Approx(1.0));
  CHECK(g.sup_m == doctest::Approx(201.0));     // 10^2 + 10^2 + 1 at the corners
  CHECK(g.sup_M == doctest::Approx(201.0));
  CHECK(g.at_inf_m == std::vector<double>{0, 0, 0, 0});
}

TEST_CASE("global invariants with mixed coefficient scales") {
  const SplitForm mixed = form_of({"x1^2 + y1^2 + 2", "5"});
  const auto g = global_invariants(mixed, SampleDomain::uniform(2, -1, 1, 3));
  CHECK(g.inf_m == doctest::Approx(2.0));
  CHECK(g.inf_M == doctest::Approx(5.0));
  CHECK(g.sup_M == doctest::Approx(5.0));  // pair 1 peaks at 4 on this box
  CHECK(g.sup_m == doctest::Approx(4.0));
}

TEST_CASE("ordering invariants hold on random forms") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<std::string> sources;
    for (int i = 0; i < n; ++i) {
      const std::string xi = "x" + std::to_string(i + 1), yi = "y" + std::to_string(i + 1);
      sources.push_back(xi + "^2 + " + yi + "^2 + " + std::to_string(1 + rng() % 7));
    }
    const auto g = global_invariants(form_of(sources), SampleDomain::uniform(n, -3, 3, 5));
    CHECK(g.inf_m <= g.sup_m);
    CHECK(g.inf_M <= g.sup_M);
    CHECK(g.inf_m <= g.inf_M);
    CHECK(g.sup_m <= g.sup_M);
  }
}

TEST_CASE("a vanishing coefficient aborts with its location") {
  const SplitForm vanishing = form_of({"x1", "1"});
  try {
    global_invariants(vanishing, SampleDomain::uniform(2, -1, 1, 3));
    FAIL("expected a vanishing-coefficient error");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::kVanishingCoefficient);
    CHECK(std::string(err.what()).find("f1") != std::string::npos);
    CHECK(std::string(err.what()).find("0") != std::string::npos);
  }
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(SampleDomain::uniform(2, 1, -1, 5), Error);
  CHECK_THROWS_AS(SampleDomain::uniform(2, -1, 1, 1), Error);
  const SplitForm constants = form_of({"2", "3"});
  CHECK_THROWS_AS(global_invariants(constants, SampleDomain::uniform(1, -1, 1, 3)), Error);
}

TEST_CASE("gap reports: identical and relabeled forms show no gap") {
  const SplitForm constants = form_of({"2", "3"});
  const SplitForm swapped = form_of({"3", "2"});
  const auto domain = SampleDomain::uniform(2, -2, 2, 5);
  CHECK_FALSE(multiset_match(constants, constants, domain).gap_found());
  CHECK_FALSE(multiset_match(constants, swapped, domain).gap_found());

  const SplitForm f = form_of({"x1^2 + y1^2 + 2", "x2^4 + 3"});
  const SplitForm relabeled = form_of({"x1^4 + 3", "x2^2 + y2^2 + 2"});
  CHECK_FALSE(multiset_match(f, relabeled, domain).gap_found());
}

TEST_CASE("the parametrized radial family shows an inf_m gap equal to the parameter shift") {
  const SplitForm family = SplitForm::parse(kRadialFamily);
  const auto domain = SampleDomain::uniform(2, -10, 10, 11);

  const GapReport report = multiset_match(family, 1.0, family, 0.0, domain);
  REQUIRE(report.gap_found());
  bool saw_inf_m = false;
  for (const auto& gap : report.gaps) {
    if (gap.invariant == "inf_m") {
      saw_inf_m = true;
      CHECK(gap.size() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(gap.lhs == doctest::Approx(2.0));
      CHECK(gap.rhs == doctest::Approx(1.0));
    }
  }
  CHECK(saw_inf_m);

  std::mt19937_64 rng(13);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 10; ++trial) {
    double t1 = unit(), t2 = unit();
    if (t1 < t2) std::swap(t1, t2);
    if (t1 - t2 < 1e-3) continue;
    const GapReport r = multiset_match(family, t1, family, t2, domain);
    REQUIRE(r.gap_found());
    CHECK(r.gaps.front().invariant == "inf_m");
    CHECK(r.gaps.front().size() == doctest::Approx(t1 - t2).epsilon(1e-9));
  }

  CHECK_FALSE(multiset_match(family, 0.5, family, 0.5, domain).gap_found());
}
