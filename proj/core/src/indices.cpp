#include "shiftop/indices.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace shiftop {

SpaceIndices space_indices(double alpha, double beta, bool fundamental_type) {
  if (!(alpha > 0.0 && alpha <= beta && beta < 1.0)) {
    std::ostringstream msg;
    msg << "space indices must satisfy 0 < alpha <= beta < 1, got alpha=" << alpha << " beta=" << beta;
    throw InvalidArgument(msg.str());
  }
  SpaceIndices x;
  x.alpha = alpha;
  x.beta = beta;
  x.fundamental_type = fundamental_type;
  if (!fundamental_type) {
    x.warnings.push_back(
        "space is not of fundamental type; the one-sided invertibility criteria are established only when the "
        "Zippin indices equal the Boyd indices");
  }
  return x;
}

SpaceIndices lebesgue(double p) {
  if (!(p > 1.0 && std::isfinite(p))) throw InvalidArgument("Lebesgue exponent must satisfy 1 < p < infinity");
  return space_indices(1.0 / p, 1.0 / p, true);
}

SpaceIndices associate_indices(SpaceIndices const& x) {
  return space_indices(1.0 - x.beta, 1.0 - x.alpha, x.fundamental_type);
}

IndexEstimate submultiplicative_indices(std::function<double(double)> const& f, double x_min, double x_max,
                                        IndexEstimateOptions const& options) {
  if (!(x_min > 0.0 && x_min < 1.0 && x_max > 1.0)) {
    throw InvalidArgument("index estimation needs 0 < x_min < 1 < x_max");
  }
  if (options.points_per_decade < 1) throw InvalidArgument("points_per_decade must be positive");
  auto const value = [&f](double x) {
    double const v = f(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "function must be positive, got " << v << " at x=" << x;
      throw InvalidArgument(msg.str());
    }
    return v;
  };

  IndexEstimate out;
  out.lower = -std::numeric_limits<double>::infinity();
  out.upper = std::numeric_limits<double>::infinity();
  double const step = std::log(10.0) / options.points_per_decade;

  double const log_min = std::log(x_min);
  auto const below = static_cast<long>(std::ceil(-log_min / step));
  for (long i = 1; i <= below; ++i) {
    double const lx = std::max(log_min, -static_cast<double>(i) * step);
    double const x = std::exp(lx);
    double const ratio = std::log(value(x)) / lx;
    if (ratio > out.lower) {
      out.lower = ratio;
      out.lower_at = x;
    }
  }
  double const log_max = std::log(x_max);
  auto const above = static_cast<long>(std::ceil(log_max / step));
  for (long i = 1; i <= above; ++i) {
    double const lx = std::min(log_max, static_cast<double>(i) * step);
    double const x = std::exp(lx);
    double const ratio = std::log(value(x)) / lx;
    if (ratio < out.upper) {
      out.upper = ratio;
      out.upper_at = x;
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(log_min, log_max);
  int violations = 0;
  for (int i = 0; i < options.spot_checks; ++i) {
    double const x = std::exp(dist(rng));
    double const y = std::exp(dist(rng));
    if (x * y < x_min || x * y > x_max) continue;
    if (value(x * y) > value(x) * value(y) * (1.0 + 1e-12)) ++violations;
  }
  if (violations > 0) {
    out.warnings.push_back("submultiplicativity violated at " + std::to_string(violations) + " sampled pairs");
  }
  if (out.lower > out.upper) {
    out.warnings.push_back("lower index estimate exceeds upper; the function is likely not submultiplicative");
  }
  return out;
}

IndexEstimate submultiplicative_indices(expr::Expr const& f, double x_min, double x_max,
                                        IndexEstimateOptions const& options) {
  return submultiplicative_indices([&f](double x) { return expr::eval(f, x); }, x_min, x_max, options);
}

}  // namespace shiftop
