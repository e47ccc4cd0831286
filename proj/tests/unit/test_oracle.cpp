#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "shiftop/oracle.hpp"
#include "shiftop/spectrum.hpp"

using namespace shiftop;
using fixtures::build;

namespace {

Eigen::VectorXd samples(std::function<double(double)> const& f, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = f(double(i) / n);
  return v;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("composition matrices of exact shifts") {
  Eigen::MatrixXd const id = composition_matrix(Shift::from_lift("t"), 64);
  CHECK((id - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::MatrixXd const half = composition_matrix(Shift::from_lift("t + 0.5"), 64);
  for (int i = 0; i < 64; ++i) {
    CHECK(half(i, (i + 32) % 64) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(half.row(i).cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("composition matrix rows sum to one") {
  Eigen::MatrixXd const p = composition_matrix(Shift::from_lift(fixtures::kS1), 256);
  CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("composition is accurate on smooth functions") {
  Shift const s = Shift::from_lift(fixtures::kS1);
  auto const f = [](double t) { return std::sin(2 * std::numbers::pi * t); };
  int const n = 512;
  Eigen::VectorXd const exact = samples([&](double t) { return f(s.apply(t)); }, n);
  Eigen::VectorXd const approx = composition_matrix(s, n) * samples(f, n);
  CHECK((exact - approx).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("composition error decays with fourth order") {
  Shift const s = Shift::from_lift(fixtures::kS1);
  auto const f = [](double t) { return std::sin(2 * std::numbers::pi * t) + 0.5 * std::cos(6 * std::numbers::pi * t); };
  std::vector<double> logn;
  std::vector<double> loge;
  for (int n : {64, 128, 256, 512}) {
    Eigen::VectorXd const exact = samples([&](double t) { return f(s.apply(t)); }, n);
    Eigen::VectorXd const approx = composition_matrix(s, n) * samples(f, n);
    logn.push_back(std::log(double(n)));
    loge.push_back(std::log((exact - approx).cwiseAbs().maxCoeff()));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    mx += logn[i];
    my += loge[i];
  }
  mx /= logn.size();
  my /= loge.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sxy += (logn[i] - mx) * (loge[i] - my);
    sxx += (logn[i] - mx) * (logn[i] - mx);
  }
  double const slope = sxy / sxx;
  CHECK(slope == doctest::Approx(-4.0).epsilon(0.3 / 4.0));
}

TEST_CASE("discretization inputs") {
  OperatorSpec const op = build(fixtures::suite()[0]);
  CHECK_THROWS_AS(discretize(op, 100, 2.0), InvalidArgument);
  CHECK_THROWS_AS(discretize(op, 32, 2.0), InvalidArgument);
  CHECK_THROWS_AS(discretize(op, 64, 1.0), InvalidArgument);
  GridOperator const g = discretize(op, 64, 2.0);
  CHECK(g.matrix().rows() == 64);
  CHECK(g.nodes(1) == doctest::Approx(1.0 / 64));
}

TEST_CASE("numeric radius matches the closed form") {
  Shift const s = Shift::from_lift(fixtures::kS1);
  PeriodicStructure const ps = compute_periodic_structure(s);
  CircleFunction const one(expr::parse("1"));
  RadiusEstimate const r = estimate_radius_numeric(weighted_shift_grid(one, s, 1024, 2.0), 200);
  CHECK(std::abs(r.estimate - radius_lebesgue(one, s, ps, 2.0)) <= 0.05 * 1.6403);
  CHECK(r.iterations == 200);

  Shift const id = Shift::from_lift("t");
  RadiusEstimate const c = estimate_radius_numeric(weighted_shift_grid(CircleFunction(expr::parse("1.5")), id, 256, 2.0), 60);
  CHECK(c.estimate == doctest::Approx(1.5).epsilon(1e-12));

  CircleFunction const bump(expr::parse("sin(2*pi*t)^2"));
  RadiusEstimate const z = estimate_radius_numeric(weighted_shift_grid(bump, s, 1024, 2.0), 200);
  CHECK(z.estimate < 0.05);

  CHECK_THROWS_AS(estimate_radius_numeric(weighted_shift_grid(one, s, 64, 2.0), 10), InvalidArgument);
}

TEST_CASE("numeric radius on all fixed-point fixtures") {
  for (auto const& f : fixtures::suite()) {
    OperatorSpec const op = build(f);
    if (op.structure.m != 1) continue;
    for (CircleFunction const& g : {op.a, op.b}) {
      double const closed = radius_lebesgue(g, op.shift, op.structure, 2.0);
      RadiusEstimate const r = estimate_radius_numeric(weighted_shift_grid(g, op.shift, 1024, 2.0), 200);
      CHECK_MESSAGE(std::abs(r.estimate - closed) <= 0.05 * closed, f.name << " " << g.description());
    }
  }
}

TEST_CASE("diagonal smallest singular values") {
  Shift const id = Shift::from_lift("t");
  CircleFunction const one(expr::parse("1"));
  OperatorSpec const two = make_operator(CircleFunction(expr::parse("2")), one, id, lebesgue(2.0));
  OperatorSpec const half = make_operator(CircleFunction(expr::parse("0.5")), one, id, lebesgue(2.0));
  CHECK(smallest_singular_value(discretize(two, 64, 2.0).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(smallest_singular_value(discretize(half, 64, 2.0).matrix()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trend classification") {
  CHECK(classify_trend({1.0, 0.9, 0.8}, 1e-6) == Trend::stable);
  CHECK(classify_trend({1.0, 0.4, 0.1}, 1e-6) == Trend::decaying);
  CHECK(classify_trend({1e-3, 1e-9, 0.0}, 1e-6) == Trend::decaying);
  CHECK(classify_trend({1.0, 3.0, 0.9}, 1e-6) == Trend::mixed);
}

TEST_CASE("evidence on two-sided and neither fixtures") {
  std::vector<int> const ladder{128, 256, 512};
  EvidenceRecord const f1 = invertibility_evidence(build(fixtures::suite()[0]), ladder, 2.0);
  CHECK(f1.expected == Verdict::two_sided);
  CHECK(f1.trend == Trend::stable);
  CHECK(f1.consistent);
  REQUIRE(f1.rungs.size() == 3);
  for (std::size_t i = 1; i < f1.rungs.size(); ++i) {
    double const ratio = f1.rungs[i].smin / f1.rungs[i - 1].smin;
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
  }

  EvidenceRecord const f7 = invertibility_evidence(build(fixtures::suite()[5]), ladder, 2.0);
  CHECK(f7.trend == Trend::decaying);
  CHECK(f7.consistent);

  CHECK_THROWS_AS(invertibility_evidence(build(fixtures::suite()[0]), {256, 128, 512}, 2.0), InvalidArgument);
  CHECK_THROWS_AS(invertibility_evidence(build(fixtures::suite()[0]), {128, 256}, 2.0), InvalidArgument);
}

TEST_CASE("evidence is deterministic") {
  OperatorSpec const op = build(fixtures::suite()[2]);
  EvidenceRecord const x = invertibility_evidence(op, Verdict::right_only, {64, 128, 256}, 2.0, 42);
  EvidenceRecord const y = invertibility_evidence(op, Verdict::right_only, {64, 128, 256}, 2.0, 42);
  CHECK(x.residual == y.residual);
  for (std::size_t i = 0; i < x.rungs.size(); ++i) CHECK(x.rungs[i].smin == y.rungs[i].smin);
}

TEST_CASE("Neumann series for a dominant diagonal") {
  OperatorSpec const op = build(fixtures::kS1, "1", "0.5", lebesgue(2.0));
  NeumannResult const r = neumann_apply(op, CircleFunction(expr::parse("1 + 0.5*sin(2*pi*t)")), 512, 40);
  CHECK(r.branch == "dominant_a");
  CHECK(r.residual < 1e-3);
  CHECK(r.predicted_ratio == doctest::Approx(0.5 * 1.6403).epsilon(1e-4));
  CHECK(std::abs(r.measured_ratio - 0.820) <= 0.1 * 0.820);

  OperatorSpec const scalar = build("t", "1", "0.5", lebesgue(2.0));
  NeumannResult const s = neumann_apply(scalar, CircleFunction(expr::parse("1")), 64, 20);
  for (int k = 0; k < 20; ++k) CHECK(s.residuals[k] == doctest::Approx(std::pow(0.5, k + 1)).epsilon(1e-12));
}

TEST_CASE("Neumann series for a dominant shift term") {
  OperatorSpec const op = build(fixtures::suite()[1]);
  NeumannResult const r = neumann_apply(op, CircleFunction(expr::parse("1 + 0.5*sin(2*pi*t)")), 512, 40, 2.0);
  CHECK(r.branch == "dominant_b");
  CHECK(r.residual < 1e-12);
  CHECK(r.predicted_ratio == doctest::Approx(0.1 * std::sqrt(1.0 + 0.2 * std::numbers::pi)).epsilon(1e-9));
  CHECK(r.predicted_ratio <= 0.164);
  CHECK(std::abs(r.measured_ratio - r.predicted_ratio) <= 0.1 * r.predicted_ratio);

  CHECK_THROWS_AS(neumann_apply(build(fixtures::suite()[2]), CircleFunction(expr::parse("1")), 128, 10),
                  NeumannUnavailable);
}

}
