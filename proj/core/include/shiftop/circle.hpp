#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftop/expr.hpp"

namespace shiftop {

inline constexpr double kPointTolerance = 1e-12;

// Reduce to [0, 1).
double wrap01(double x);
double circle_distance(double s, double t);

class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double t) : t_(wrap01(t)) {}
  double value() const { return t_; }
  operator double() const { return t_; }
  friend bool operator==(CirclePoint const& x, CirclePoint const& y) {
    return circle_distance(x.t_, y.t_) <= kPointTolerance;
  }

 private:
  double t_ = 0.0;
};

enum class ArcKind : std::uint8_t { open, closed };

// Positively oriented arc from start to end.  A full arc has start == end.
struct Arc {
  double start = 0.0;
  double end = 0.0;
  ArcKind kind = ArcKind::open;
  bool full = false;

  static Arc make(double start, double end, ArcKind kind = ArcKind::open);
  static Arc circle();
  double length() const;
  // Position along the arc measured from start, in [0, 1).
  double offset(double t) const;
  double point_at(double s) const;
  double midpoint() const { return point_at(0.5 * length()); }
  bool contains(double t, double tol = kPointTolerance) const;
};

enum class Orientation : std::int8_t { reversing = -1, preserving = 1 };

enum class OrientationHint : std::uint8_t { automatic, preserve, reverse };

class ShiftError : public Error {
 public:
  using Error::Error;
};

// A circle diffeomorphism given by a monotone lift on [0, 1].
class Diffeomorphism {
 public:
  static std::shared_ptr<Diffeomorphism const> create(expr::Expr lift,
                                                      OrientationHint hint = OrientationHint::automatic,
                                                      int grid = 4096);

  expr::Expr const& lift_expr() const { return lift_; }
  expr::Expr const& derivative_expr() const { return derivative_; }
  Orientation orientation() const { return orientation_; }
  int sigma() const { return static_cast<int>(orientation_); }

  // Lift extended to the real line by L(x + 1) = L(x) + sigma.
  double lift(double x) const;
  double lift_inverse(double y) const;
  double derivative(double t) const;

 private:
  Diffeomorphism(expr::Expr lift, expr::Expr derivative, Orientation orientation);

  expr::Expr lift_;
  expr::Expr derivative_;
  Orientation orientation_;
  double l0_;
};

// The iterate alpha_power of a base diffeomorphism.
class Shift {
 public:
  static constexpr std::int64_t kIterationGuard = 1000000;

  Shift() = default;
  explicit Shift(std::shared_ptr<Diffeomorphism const> base, std::int64_t power = 1);
  static Shift from_lift(std::string const& lift, OrientationHint hint = OrientationHint::automatic);

  std::int64_t power() const { return power_; }
  Diffeomorphism const& base() const { return *base_; }
  std::shared_ptr<Diffeomorphism const> const& base_ptr() const { return base_; }

  Orientation orientation() const;
  int sigma() const { return static_cast<int>(orientation()); }

  // alpha_k where alpha is this shift, on the lifted line and on the circle.
  double lift_iterate(double x, std::int64_t k = 1) const;
  double apply(double t, std::int64_t k = 1) const;
  CirclePoint apply(CirclePoint t, std::int64_t k = 1) const { return CirclePoint(apply(t.value(), k)); }
  // d/dt alpha_k(t).
  double derivative(double t, std::int64_t k = 1) const;

  Shift iterate(std::int64_t k) const { return Shift(base_, power_ * k); }
  Shift inverse() const { return iterate(-1); }
  bool is_identity() const;
  std::string describe() const;

 private:
  std::int64_t base_steps(std::int64_t k) const;

  std::shared_ptr<Diffeomorphism const> base_;
  std::int64_t power_ = 1;
};

struct StructureOptions {
  int m_max = 16;
  int cells = 4096;
  double tol = 1e-12;
  double flat_tol = 1e-11;
};

struct GammaArc {
  Arc arc;
  double repelling = 0.0;
  double attracting = 0.0;
  // True when the forward alpha_m orbit moves in the positive direction.
  bool forward_positive = true;
};

struct PeriodicStructure {
  int m = 1;
  Orientation orientation = Orientation::preserving;
  // Integer n with alpha_m lift(t) - t - n vanishing on Lambda.
  std::int64_t winding = 0;
  std::vector<double> lambda_points;
  std::vector<Arc> lambda_arcs;
  std::vector<double> y;
  std::vector<double> y_prime;
  std::vector<Arc> omega;
  std::vector<GammaArc> gamma;
  bool uncertain = false;
  std::vector<double> suspect_points;
  bool detected = false;

  bool phi_empty() const { return gamma.empty() && y.empty() && !omega.empty(); }
  bool in_lambda(double t, double tol = 1e-9) const;
  std::optional<std::size_t> gamma_index(double t, double tol = 1e-9) const;
  std::optional<std::size_t> omega_index(double t, double tol = 1e-9) const;
};

std::pair<Orientation, int> detect_orientation_and_multiplicity(Shift const& s, StructureOptions const& options = {});
PeriodicStructure compute_periodic_structure(Shift const& s, StructureOptions const& options = {});

// Fills omega and gamma from Y and the fixed-point data already in ps.
void decompose_components(PeriodicStructure& ps, Shift const& s);

// A structure from user-supplied data; Y' may be nonempty here.
PeriodicStructure explicit_structure(Shift const& s, int m, std::vector<double> lambda_points,
                                     std::vector<Arc> lambda_arcs, std::vector<double> y_prime);

// (repelling, attracting) endpoints for t off Lambda; (t, t) on Lambda.
std::pair<double, double> orbit_limit_endpoints(PeriodicStructure const& ps, double t);

}  // namespace shiftop
