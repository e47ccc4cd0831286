#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shiftop/error.hpp"
#include "shiftop/expr.hpp"

namespace shiftop {

// Boyd indices of a rearrangement-invariant space; fundamental_type asserts
// that the Zippin indices coincide with them.
struct SpaceIndices {
  double alpha = 0.5;
  double beta = 0.5;
  bool fundamental_type = true;
  std::vector<std::string> warnings;
};

SpaceIndices space_indices(double alpha, double beta, bool fundamental_type = true);
SpaceIndices lebesgue(double p);
SpaceIndices associate_indices(SpaceIndices const& x);

struct IndexEstimate {
  double lower = 0.0;
  double upper = 0.0;
  // Grid points where the extrema were attained.
  double lower_at = 0.0;
  double upper_at = 0.0;
  bool estimate = true;
  std::vector<std::string> warnings;
};

struct IndexEstimateOptions {
  int points_per_decade = 512;
  int spot_checks = 64;
  unsigned long long seed = 0x5EED;
};

IndexEstimate submultiplicative_indices(std::function<double(double)> const& f, double x_min, double x_max,
                                        IndexEstimateOptions const& options = {});
IndexEstimate submultiplicative_indices(expr::Expr const& f, double x_min, double x_max,
                                        IndexEstimateOptions const& options = {});

}  // namespace shiftop
