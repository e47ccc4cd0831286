#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "shiftop/indices.hpp"

using namespace shiftop;

TEST_SUITE("indices") {

TEST_CASE("space constructors") {
  SpaceIndices const l2 = lebesgue(2.0);
  CHECK(l2.alpha == 0.5);
  CHECK(l2.beta == 0.5);
  CHECK(l2.fundamental_type);
  CHECK(lebesgue(4.0).alpha == 0.25);

  SpaceIndices const x = space_indices(1.0 / 3.0, 0.5, true);
  CHECK(x.warnings.empty());
  CHECK_THROWS_AS(space_indices(0.0, 0.5, true), InvalidArgument);
  CHECK_THROWS_AS(space_indices(0.6, 0.5, true), InvalidArgument);
  CHECK_THROWS_AS(space_indices(0.5, 1.0, true), InvalidArgument);
  CHECK_THROWS_AS(lebesgue(1.0), InvalidArgument);
  SpaceIndices const nf = space_indices(0.4, 0.5, false);
  REQUIRE(nf.warnings.size() == 1);
  CHECK(nf.warnings[0].find("fundamental type") != std::string::npos);
}

TEST_CASE("associate indices") {
  SpaceIndices const x = associate_indices(space_indices(1.0 / 3.0, 0.5, true));
  CHECK(x.alpha == doctest::Approx(0.5));
  CHECK(x.beta == doctest::Approx(2.0 / 3.0));
  SpaceIndices const l2 = associate_indices(lebesgue(2.0));
  CHECK(l2.alpha == 0.5);
  CHECK(l2.beta == 0.5);
  for (double a : {0.1, 0.3, 0.5}) {
    for (double b : {0.5, 0.7, 0.9}) {
      SpaceIndices const y = associate_indices(associate_indices(space_indices(a, b, false)));
      CHECK(y.alpha == doctest::Approx(a).epsilon(1e-15));
      CHECK(y.beta == doctest::Approx(b).epsilon(1e-15));
      CHECK_FALSE(y.fundamental_type);
      CHECK_NOTHROW(space_indices(associate_indices(space_indices(a, b)).alpha,
                                  associate_indices(space_indices(a, b)).beta));
    }
  }
}

TEST_CASE("indices of power functions are exact") {
  for (double c : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    IndexEstimate const e = submultiplicative_indices([c](double x) { return std::pow(x, c); }, 1e-3, 1e3);
    CHECK(std::abs(e.lower - c) <= 1e-12);
    CHECK(std::abs(e.upper - c) <= 1e-12);
    CHECK(e.estimate);
  }
}

TEST_CASE("piecewise powers") {
  IndexEstimate const e = submultiplicative_indices(
      [](double x) { return std::max(std::pow(x, 1.0 / 3.0), std::sqrt(x)); }, 1e-4, 1e4);
  CHECK(e.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(e.upper == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e.lower <= e.upper);

  IndexEstimate const m = submultiplicative_indices(expr::parse("(1 + t + abs(1 - t))/2"), 1e-4, 1e4);
  CHECK(m.lower == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimator diagnostics") {
  CHECK_THROWS_AS(submultiplicative_indices([](double x) { return x - 1.0; }, 1e-2, 1e2), InvalidArgument);
  CHECK_THROWS_AS(submultiplicative_indices([](double x) { return x; }, 2.0, 1e2), InvalidArgument);
  // x^2 + 1 is not submultiplicative near 1.
  IndexEstimate const e = submultiplicative_indices([](double x) { return 0.5 * (x * x + 1.0); }, 1e-2, 1e2);
  CHECK_FALSE(e.warnings.empty());
}

}
