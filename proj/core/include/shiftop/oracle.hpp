#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftop/analysis.hpp"

namespace shiftop {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Collocation of f -> f o alpha_k on the nodes i/N using 4-point periodic
// Lagrange interpolation around alpha_k(t_i).
Eigen::MatrixXd composition_matrix(Shift const& s, int n, std::int64_t k = 1);

// diag(a) - diag(b * w) P with w = |alpha'|^(-1/p).  The weight makes the
// grid action of W an approximate isometry-up-to-dilation of L^p, so that
// spectral quantities of the matrix track those of the operator on L^p.
struct GridOperator {
  int n = 0;
  double p = 2.0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd weight;
  Eigen::MatrixXd composition;

  Eigen::MatrixXd matrix() const;
};

GridOperator discretize(OperatorSpec const& op, int n, double p);
// The grid form of gW, i.e. a = 0 and b = -g.
GridOperator weighted_shift_grid(CircleFunction const& g, Shift const& s, int n, double p);

// Discrete p-norm with weights 1/N.
double grid_norm(Eigen::VectorXd const& v, double p);

struct RadiusEstimate {
  double estimate = 0.0;
  double gelfand = 0.0;
  double spread = 0.0;
  int iterations = 0;
  std::vector<double> ratios;
};

RadiusEstimate estimate_radius_numeric(Eigen::MatrixXd const& t, int iters, double p,
                                       std::uint64_t seed = kDefaultSeed);
RadiusEstimate estimate_radius_numeric(GridOperator const& g, int iters, std::uint64_t seed = kDefaultSeed);

double smallest_singular_value(Eigen::MatrixXd const& m);

enum class Trend : std::uint8_t { stable, decaying, mixed };
std::string to_string(Trend t);

struct EvidenceRung {
  int n = 0;
  double direct = 0.0;
  double inverse_form = 0.0;
  double smin = 0.0;
  double adjoint_direct = 0.0;
  double adjoint_inverse_form = 0.0;
  double adjoint_smin = 0.0;
};

struct EvidenceRecord {
  double p = 2.0;
  std::vector<EvidenceRung> rungs;
  double floor = 0.0;
  Trend trend = Trend::mixed;
  Trend adjoint_trend = Trend::mixed;
  // Relative least-squares residuals of random right-hand sides on the
  // smallest rung, for the operator and its adjoint.
  double residual = 0.0;
  double adjoint_residual = 0.0;
  Verdict expected = Verdict::undecidable;
  bool consistent = false;
  std::string note;
};

Trend classify_trend(std::vector<double> const& values, double floor);

EvidenceRecord invertibility_evidence(OperatorSpec const& op, std::vector<int> const& ladder, double p,
                                      std::uint64_t seed = kDefaultSeed, Tolerances const& tol = {});
// Variant reusing an existing verdict.
EvidenceRecord invertibility_evidence(OperatorSpec const& op, Verdict expected, std::vector<int> const& ladder,
                                      double p, std::uint64_t seed = kDefaultSeed, Tolerances const& tol = {});

struct NeumannResult {
  std::string branch;
  int n = 0;
  int terms = 0;
  double residual = 0.0;
  std::vector<double> residuals;
  double measured_ratio = 0.0;
  double predicted_ratio = 0.0;
};

class NeumannUnavailable : public Error {
 public:
  NeumannUnavailable() : Error("Neumann form not available") {}
};

NeumannResult neumann_apply(OperatorSpec const& op, CircleFunction const& f, int n, int terms, double p = 2.0);

}  // namespace shiftop
