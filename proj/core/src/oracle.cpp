#include "shiftop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

namespace shiftop {

namespace {

void check_grid(int n, double p) {
  if (n < 64 || (n & (n - 1)) != 0) throw InvalidArgument("grid size must be a power of two, at least 64");
  if (!(p > 1.0 && std::isfinite(p))) throw InvalidArgument("exponent must satisfy 1 < p < infinity");
}

Eigen::VectorXd sample(CircleFunction const& f, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = f(static_cast<double>(i) / n);
  return v;
}

Eigen::VectorXd dilation_weight(Shift const& s, int n, double p, std::int64_t k) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = std::pow(std::abs(s.derivative(static_cast<double>(i) / n, k)), -1.0 / p);
  return w;
}

double conjugate(double p) { return p / (p - 1.0); }

}  // namespace

Eigen::MatrixXd composition_matrix(Shift const& s, int n, std::int64_t k) {
  if (n < 4) throw InvalidArgument("composition matrix needs at least 4 nodes");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double const pos = s.apply(static_cast<double>(i) / n, k) * n;
    double const base = std::floor(pos);
    double const u = pos - base;
    auto const j = static_cast<long>(base);
    double const w[4] = {
        -u * (u - 1.0) * (u - 2.0) / 6.0,
        (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
        -(u + 1.0) * u * (u - 2.0) / 2.0,
        (u + 1.0) * u * (u - 1.0) / 6.0,
    };
    for (int o = 0; o < 4; ++o) {
      long const col = (((j + o - 1) % n) + n) % n;
      p(i, col) += w[o];
    }
  }
  return p;
}

Eigen::MatrixXd GridOperator::matrix() const {
  Eigen::VectorXd const scaled = -b.cwiseProduct(weight);
  Eigen::MatrixXd m = scaled.asDiagonal() * composition;
  m.diagonal() += a;
  return m;
}

GridOperator discretize(OperatorSpec const& op, int n, double p) {
  check_grid(n, p);
  GridOperator g;
  g.n = n;
  g.p = p;
  g.nodes = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1) / n);
  g.a = sample(op.a, n);
  g.b = sample(op.b, n);
  g.weight = dilation_weight(op.shift, n, p, 1);
  g.composition = composition_matrix(op.shift, n, 1);
  return g;
}

GridOperator weighted_shift_grid(CircleFunction const& g, Shift const& s, int n, double p) {
  check_grid(n, p);
  GridOperator out;
  out.n = n;
  out.p = p;
  out.nodes = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1) / n);
  out.a = Eigen::VectorXd::Zero(n);
  out.b = -sample(g, n);
  out.weight = dilation_weight(s, n, p, 1);
  out.composition = composition_matrix(s, n, 1);
  return out;
}

double grid_norm(Eigen::VectorXd const& v, double p) {
  if (v.size() == 0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v(i)), p);
  return std::pow(sum / static_cast<double>(v.size()), 1.0 / p);
}

RadiusEstimate estimate_radius_numeric(Eigen::MatrixXd const& t, int iters, double p, std::uint64_t seed) {
  if (iters < 50) throw InvalidArgument("power iteration needs at least 50 steps");
  if (t.rows() != t.cols()) throw InvalidArgument("power iteration needs a square matrix");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(t.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  v /= grid_norm(v, p);

  RadiusEstimate out;
  double log_sum = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd const next = t * v;
    double const ratio = grid_norm(next, p);
    out.ratios.push_back(ratio);
    out.iterations = k + 1;
    if (ratio == 0.0) {
      out.estimate = 0.0;
      out.gelfand = 0.0;
      out.spread = 0.0;
      return out;
    }
    log_sum += std::log(ratio);
    v = next / ratio;
  }
  out.estimate = out.ratios.back();
  out.gelfand = std::exp(log_sum / iters);
  std::size_t const tail = std::min<std::size_t>(10, out.ratios.size());
  auto const first = out.ratios.end() - static_cast<std::ptrdiff_t>(tail);
  out.spread = *std::max_element(first, out.ratios.end()) - *std::min_element(first, out.ratios.end());
  return out;
}

RadiusEstimate estimate_radius_numeric(GridOperator const& g, int iters, std::uint64_t seed) {
  return estimate_radius_numeric(g.matrix(), iters, g.p, seed);
}

// Square root of the smallest eigenvalue of M^T M.  Values below roughly
// 1e-8 * |M| are at the noise level of this route and are floored by callers.
double smallest_singular_value(Eigen::MatrixXd const& m) {
  Eigen::MatrixXd const gram = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues()(0)));
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::stable: return "stable";
    case Trend::decaying: return "decaying";
    case Trend::mixed: return "mixed";
  }
  return "mixed";
}

Trend classify_trend(std::vector<double> const& values, double floor) {
  if (values.size() < 2) return Trend::mixed;
  if (values.back() <= floor) return Trend::decaying;
  bool stable = values.front() > floor;
  bool non_increasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    double const prev = std::max(values[i - 1], floor);
    double const cur = std::max(values[i], floor);
    double const ratio = cur / prev;
    if (ratio < 0.5 || ratio > 2.0) stable = false;
    if (cur > prev) non_increasing = false;
  }
  if (stable) return Trend::stable;
  if (non_increasing && values.front() >= 2.0 * values.back()) return Trend::decaying;
  return Trend::mixed;
}

namespace {

struct FormValues {
  double direct;
  double inverse_form;
};

// Direct form A_N and inverse-shift form B_N = diag(a w_inv) Q - diag(b),
// the grid image of A W^-1 = a W^-1 - b.  Collocation of a non-isometric
// shift on a uniform grid is rank deficient where alpha contracts, so one
// form alone can collapse while the operator is invertible.
FormValues both_forms(OperatorSpec const& op, int n, double p) {
  GridOperator const g = discretize(op, n, p);
  double const direct = smallest_singular_value(g.matrix());
  Eigen::MatrixXd const q = composition_matrix(op.shift, n, -1);
  Eigen::VectorXd const w_inv = dilation_weight(op.shift, n, p, -1);
  Eigen::MatrixXd b_form = g.a.cwiseProduct(w_inv).asDiagonal() * q;
  b_form.diagonal() -= g.b;
  return {direct, smallest_singular_value(b_form)};
}

double random_rhs_residual(Eigen::MatrixXd const& m, std::uint64_t seed) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  Eigen::VectorXd const& s = svd.singularValues();
  double const cutoff = 1e-8 * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd f(m.rows());
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = dist(rng);
    Eigen::MatrixXd const u = svd.matrixU().leftCols(rank);
    Eigen::VectorXd const residual = f - u * (u.transpose() * f);
    worst = std::max(worst, residual.norm() / f.norm());
  }
  return worst;
}

}  // namespace

EvidenceRecord invertibility_evidence(OperatorSpec const& op, std::vector<int> const& ladder, double p,
                                      std::uint64_t seed, Tolerances const& tol) {
  return invertibility_evidence(op, decide(op, tol).verdict, ladder, p, seed, tol);
}

EvidenceRecord invertibility_evidence(OperatorSpec const& op, Verdict expected, std::vector<int> const& ladder,
                                      double p, std::uint64_t seed, Tolerances const& tol) {
  if (ladder.size() < 3) throw InvalidArgument("evidence ladder needs at least three rungs");
  if (!std::is_sorted(ladder.begin(), ladder.end()) ||
      std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end()) {
    throw InvalidArgument("evidence ladder must be strictly ascending");
  }
  for (int n : ladder) check_grid(n, p);

  EvidenceRecord record;
  record.p = p;
  record.expected = expected;
  OperatorSpec const adjoint = adjoint_spec(op, tol);
  double const p_adj = conjugate(p);

  std::vector<std::future<EvidenceRung>> jobs;
  for (int n : ladder) {
    jobs.push_back(std::async(std::launch::async, [&op, &adjoint, n, p, p_adj] {
      EvidenceRung rung;
      rung.n = n;
      FormValues const primal = both_forms(op, n, p);
      FormValues const dual = both_forms(adjoint, n, p_adj);
      rung.direct = primal.direct;
      rung.inverse_form = primal.inverse_form;
      rung.smin = std::max(primal.direct, primal.inverse_form);
      rung.adjoint_direct = dual.direct;
      rung.adjoint_inverse_form = dual.inverse_form;
      rung.adjoint_smin = std::max(dual.direct, dual.inverse_form);
      return rung;
    }));
  }
  for (auto& job : jobs) record.rungs.push_back(job.get());

  GridOperator const coarse = discretize(op, ladder.front(), p);
  double const scale = std::max({coarse.a.cwiseAbs().maxCoeff(), coarse.b.cwiseProduct(coarse.weight).cwiseAbs().maxCoeff(), 1e-300});
  record.floor = 1e-6 * scale;

  std::vector<double> primal;
  std::vector<double> dual;
  for (auto const& r : record.rungs) {
    primal.push_back(r.smin);
    dual.push_back(r.adjoint_smin);
  }
  record.trend = classify_trend(primal, record.floor);
  record.adjoint_trend = classify_trend(dual, record.floor);

  record.residual = random_rhs_residual(coarse.matrix(), seed);
  record.adjoint_residual = random_rhs_residual(discretize(adjoint, ladder.front(), p_adj).matrix(), seed);

  switch (expected) {
    case Verdict::two_sided:
      record.consistent = record.trend == Trend::stable && record.adjoint_trend == Trend::stable;
      record.note = "two-sided verdict expects bounded-below smallest singular values";
      break;
    case Verdict::neither:
      record.consistent = record.trend == Trend::decaying;
      record.note = "verdict 'neither' expects smallest singular values tending to zero";
      break;
    case Verdict::right_only:
    case Verdict::left_only:
      record.consistent = !(record.trend == Trend::stable && record.adjoint_trend == Trend::stable);
      record.note = "one-sided verdict: evidence only; contradicted only if both sides stay bounded below";
      break;
    case Verdict::undecidable:
      record.consistent = true;
      record.note = "no verdict to corroborate";
      break;
  }
  return record;
}

// Neumann series

namespace {

std::vector<double> lambda_points_for(PeriodicStructure const& ps) {
  std::vector<double> ts = ps.lambda_points;
  ts.insert(ts.end(), ps.y.begin(), ps.y.end());
  for (auto const& arc : ps.lambda_arcs) {
    for (int i = 0; i <= 64; ++i) ts.push_back(arc.point_at(arc.length() * i / 64.0));
  }
  return ts;
}

}  // namespace

NeumannResult neumann_apply(OperatorSpec const& op, CircleFunction const& f, int n, int terms, double p) {
  check_grid(n, p);
  if (terms < 1) throw InvalidArgument("Neumann sum needs at least one term");
  GridOperator const g = discretize(op, n, p);
  int const m = op.structure.m;
  auto const lambda = lambda_points_for(op.structure);

  bool a_dominant = g.a.cwiseAbs().minCoeff() > 0.0;
  bool b_dominant = g.b.cwiseAbs().minCoeff() > 0.0;
  for (double t : lambda) {
    EtaValues const eta = eta_values(op, t);
    if (!(eta.eta1 > 0.0)) a_dominant = false;
    if (!(eta.eta0 < 0.0)) b_dominant = false;
  }
  if (!a_dominant && !b_dominant) throw NeumannUnavailable();

  NeumannResult out;
  out.n = n;
  out.terms = terms;
  Eigen::VectorXd const rhs = sample(f, n);
  double const rhs_norm = grid_norm(rhs, p);
  if (rhs_norm == 0.0) throw InvalidArgument("right-hand side vanishes on the grid");

  // Operator on the grid, the iteration matrix, and the seed term.
  Eigen::MatrixXd system;
  Eigen::MatrixXd iteration;
  Eigen::VectorXd term;
  double sign = 1.0;
  CircleFunction ratio;
  Shift used = op.shift;
  if (a_dominant) {
    out.branch = "dominant_a";
    system = g.matrix();
    iteration = (g.b.cwiseProduct(g.weight).cwiseQuotient(g.a)).asDiagonal() * g.composition;
    term = rhs.cwiseQuotient(g.a);
    CircleFunction const a = op.a;
    CircleFunction const b = op.b;
    ratio = CircleFunction([a, b](double t) { return b(t) / a(t); }, "b/a");
  } else {
    out.branch = "dominant_b";
    Eigen::MatrixXd const q = composition_matrix(op.shift, n, -1);
    Eigen::VectorXd const w_inv = dilation_weight(op.shift, n, p, -1);
    system = g.a.cwiseProduct(w_inv).asDiagonal() * q;
    system.diagonal() -= g.b;
    iteration = (g.a.cwiseProduct(w_inv).cwiseQuotient(g.b)).asDiagonal() * q;
    term = rhs.cwiseQuotient(g.b);
    sign = -1.0;
    CircleFunction const a = op.a;
    CircleFunction const b = op.b;
    ratio = CircleFunction([a, b](double t) { return a(t) / b(t); }, "a/b");
    used = op.shift.inverse();
  }

  Eigen::VectorXd image = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < terms; ++k) {
    image += sign * (system * term);
    out.residuals.push_back(grid_norm(image - rhs, p) / rhs_norm);
    term = iteration * term;
  }
  out.residual = out.residuals.back();
  // Residuals at rounding level carry no rate information.
  int last = terms - 1;
  while (last > 0 && out.residuals[last] < 1e-13) --last;
  int const span = std::min(10, last);
  if (span > 0 && out.residuals[last - span] > 0.0) {
    out.measured_ratio = std::pow(out.residuals[last] / out.residuals[last - span], 1.0 / span);
  }

  double predicted = 0.0;
  for (double t : lambda) {
    double const value = std::abs(orbit_product(ratio, used, m, t)) *
                         std::pow(std::abs(used.derivative(t, m)), -1.0 / p);
    predicted = std::max(predicted, std::pow(value, 1.0 / m));
  }
  out.predicted_ratio = predicted;
  return out;
}

}  // namespace shiftop
