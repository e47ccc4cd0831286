#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "shiftop/spectrum.hpp"

using namespace shiftop;

namespace {

struct Context {
  Shift shift;
  PeriodicStructure structure;
};

Context context(char const* lift) {
  Shift const s = Shift::from_lift(lift);
  return {s, compute_periodic_structure(s)};
}

CircleFunction fn(char const* text) { return CircleFunction(expr::parse(text)); }

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("radius formulas on S1") {
  Context const c = context(fixtures::kS1);
  double const expected = std::pow(1.0 - 0.2 * std::numbers::pi, -0.5);
  CHECK(radius_lebesgue(fn("1"), c.shift, c.structure, 2.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(radius_lebesgue(fn("1"), c.shift, c.structure, 2.0) == doctest::Approx(1.6403).epsilon(1e-4));
  CHECK(radius_bound(fn("1"), c.shift, c.structure, fixtures::default_space()) == doctest::Approx(expected));
  CHECK(radius_bound(fn("1"), c.shift, c.structure, lebesgue(2.0)) ==
        doctest::Approx(radius_lebesgue(fn("1"), c.shift, c.structure, 2.0)));
  CHECK(radius_lebesgue(fn("0"), c.shift, c.structure, 2.0) == 0.0);
  CHECK(radius_lebesgue(fn("sin(2*pi*t)"), c.shift, c.structure, 3.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(radius_bound(fn("sin(2*pi*t)"), c.shift, c.structure, fixtures::default_space()) < 1e-12);
  CHECK_THROWS_AS(radius_lebesgue(fn("1"), c.shift, c.structure, 1.0), InvalidArgument);

  Context const id = context("t");
  CHECK(radius_lebesgue(fn("2 + sin(2*pi*t)"), id.shift, id.structure, 2.0) == doctest::Approx(3.0).epsilon(1e-6));
  Context const half = context("t + 0.5");
  CHECK_THROWS_AS(radius_lebesgue(fn("1"), half.shift, half.structure, 2.0), InvalidArgument);
}

TEST_CASE("spectrum of the unweighted S1 shift") {
  Context const c = context(fixtures::kS1);
  SpectrumSet const ss = shift_spectrum(fn("1"), c.shift, c.structure, fixtures::default_space());
  CHECK(ss.m == 1);
  CHECK(ss.curve.empty());
  REQUIRE(ss.merged.size() == 1);
  CHECK(ss.merged[0].r_in == doctest::Approx(0.7837).epsilon(5e-5));
  CHECK(ss.merged[0].r_out == doctest::Approx(1.6403).epsilon(5e-5));
  CHECK(spectrum_contains(ss, 1.0) == Membership::inside);
  CHECK(spectrum_contains(ss, 2.0) == Membership::outside);
  CHECK(spectrum_contains(ss, ss.merged[0].r_out) == Membership::boundary);
  CHECK(spectrum_contains(ss, std::complex<double>(0.0, 1.2)) == Membership::inside);

  std::ostringstream csv;
  write_spectrum_csv(csv, ss);
  CHECK(csv.str() == "kind,r_in|re,r_out|im\nannulus,0.7837,1.6403\n");
}

TEST_CASE("one-sided core annuli") {
  Context const c = context(fixtures::kS1);
  auto const core = one_sided_core_annuli(c.shift, c.structure.gamma[0], fixtures::default_space());
  REQUIRE(core.size() == 2);
  CHECK(core[0].r_in == doctest::Approx(0.7837).epsilon(5e-5));
  CHECK(core[0].r_out == doctest::Approx(std::pow(1.0 + 0.2 * std::numbers::pi, -1.0 / 3.0)).epsilon(1e-12));
  CHECK(core[0].r_out == doctest::Approx(0.850).epsilon(5e-4));
  CHECK(core[1].r_in == doctest::Approx(1.3909).epsilon(5e-5));
  CHECK(core[1].r_out == doctest::Approx(1.6403).epsilon(5e-5));

  auto const circles = one_sided_core_annuli(c.shift, c.structure.gamma[0], lebesgue(2.0));
  for (auto const& a : circles) CHECK(a.r_out - a.r_in < 1e-12);

  Context const flat = context("t + 0.01*sin(2*pi*t)^2");
  REQUIRE_FALSE(flat.structure.gamma.empty());
}

TEST_CASE("core annuli lie inside the spectrum") {
  Context const c = context(fixtures::kS1);
  SpectrumSet const ss = shift_spectrum(fn("1"), c.shift, c.structure, fixtures::default_space());
  for (auto const& g : c.structure.gamma) {
    for (auto const& a : one_sided_core_annuli(c.shift, g, fixtures::default_space())) {
      bool contained = false;
      for (auto const& m : ss.merged) contained = contained || (m.r_in <= a.r_in + 1e-12 && a.r_out <= m.r_out + 1e-12);
      CHECK(contained);
    }
  }
}

TEST_CASE("Carleman spectra are curve images") {
  Context const id = context("t");
  SpectrumSet const ss = shift_spectrum(fn("2 + sin(2*pi*t)"), id.shift, id.structure, fixtures::default_space());
  CHECK(ss.annuli.empty());
  CHECK_FALSE(ss.curve.empty());
  for (auto const& z : ss.curve) {
    CHECK(z.real() >= 1.0 - 1e-12);
    CHECK(z.real() <= 3.0 + 1e-12);
    CHECK(z.imag() == 0.0);
  }
  CHECK(spectrum_contains(ss, 2.5) == Membership::inside);
  CHECK(spectrum_contains(ss, 3.5) == Membership::outside);

  Context const half = context("t + 0.5");
  SpectrumSet const h = shift_spectrum(fn("1"), half.shift, half.structure, fixtures::default_space());
  CHECK(h.m == 2);
  CHECK(spectrum_contains(h, 1.0) == Membership::inside);
  CHECK(spectrum_contains(h, -1.0) == Membership::inside);
  CHECK(spectrum_contains(h, std::complex<double>(0.0, 1.0)) == Membership::outside);
  for (auto const& z : h.curve) CHECK(std::abs(std::abs(z.real()) - 1.0) < 1e-12);
}

TEST_CASE("vanishing weights give disks") {
  Context const c = context(fixtures::kS1);
  SpectrumSet const ss = shift_spectrum(fn("sin(2*pi*t) + 0.5"), c.shift, c.structure, fixtures::default_space());
  bool disk = false;
  for (auto const& a : ss.annuli) disk = disk || a.r_in == 0.0;
  CHECK(disk);
  CHECK(spectrum_contains(ss, 0.0) == Membership::inside);
}

TEST_CASE("membership is invariant under m-th roots of unity") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (char const* lift : {"t + 0.5 + 0.05*sin(4*pi*t)", "t + 0.5", fixtures::kS1}) {
    Context const c = context(lift);
    SpectrumSet const ss = shift_spectrum(fn("1 + 0.3*cos(2*pi*t)"), c.shift, c.structure, fixtures::default_space());
    std::complex<double> const rot = std::polar(1.0, 2.0 * std::numbers::pi / ss.m);
    for (int i = 0; i < 300; ++i) {
      std::complex<double> const z(u(rng), u(rng));
      CHECK(spectrum_contains(ss, z, 1e-9) == spectrum_contains(ss, z * rot, 1e-9));
    }
  }
}

TEST_CASE("radius of the spectrum equals the index bound") {
  for (char const* lift : {fixtures::kS1, "t + 0.05*sin(2*pi*t) + 0.02*sin(4*pi*t)"}) {
    Context const c = context(lift);
    for (char const* d : {"1", "2 + cos(2*pi*t)"}) {
      SpectrumSet const ss = shift_spectrum(fn(d), c.shift, c.structure, fixtures::default_space());
      double outer = 0.0;
      for (auto const& a : ss.merged) outer = std::max(outer, a.r_out);
      CHECK(outer == doctest::Approx(radius_bound(fn(d), c.shift, c.structure, fixtures::default_space())).epsilon(1e-9));
    }
  }
}

TEST_CASE("coinciding indices collapse point annuli") {
  Context const c = context(fixtures::kS1);
  for (double x : {0.3, 0.5, 0.7}) {
    for (auto const& g : c.structure.gamma) {
      for (auto const& a : one_sided_core_annuli(c.shift, g, space_indices(x, x))) CHECK(a.r_out - a.r_in < 1e-12);
    }
  }
  PeriodicStructure const declared = explicit_structure(c.shift, 1, {0.0, 0.5}, {}, {0.0, 0.5});
  SpectrumSet const ss = shift_spectrum(fn("1 + 0.3*cos(2*pi*t)"), c.shift, declared, lebesgue(2.0));
  REQUIRE(ss.annuli.size() == declared.gamma.size() + 2);
  for (std::size_t i = declared.gamma.size(); i < ss.annuli.size(); ++i) {
    CHECK(ss.annuli[i].r_out - ss.annuli[i].r_in < 1e-12);
  }
  // The arc annulus spans both endpoints and keeps its width.
  double const inner = 1.3 * std::pow(1.0 + 0.2 * std::numbers::pi, -0.5);
  double const outer = 0.7 * std::pow(1.0 - 0.2 * std::numbers::pi, -0.5);
  CHECK(ss.annuli[0].r_in == doctest::Approx(inner).epsilon(1e-9));
  CHECK(ss.annuli[0].r_out == doctest::Approx(outer).epsilon(1e-9));
}

TEST_CASE("merging and formatting") {
  auto const merged = merge_annuli({{1.0, 2.0}, {0.5, 1.2}, {3.0, 4.0}});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].r_in == 0.5);
  CHECK(merged[0].r_out == 2.0);
  CHECK(merged[1].r_in == 3.0);

  SpectrumSet ss;
  ss.merged = {{0.0, 1.23456}};
  ss.curve = {{-0.00001, 2.5}};
  std::ostringstream csv;
  write_spectrum_csv(csv, ss, 2);
  CHECK(csv.str() == "kind,r_in|re,r_out|im\nannulus,0.00,1.23\ncurve,0.00,2.50\n");
  CHECK_THROWS_AS(write_spectrum_csv(csv, ss, 18), InvalidArgument);
  Context const c = context(fixtures::kS1);
  CHECK_THROWS_AS(shift_spectrum(fn("1"), c.shift, c.structure, lebesgue(2.0), 10), InvalidArgument);
}

}
