#pragma once

#include <random>

#include "shiftop/expr.hpp"

namespace shiftop::testing {

// Random smooth expressions in t: no abs, log or sqrt, denominators bounded
// away from zero, integer powers only.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  expr::Expr smooth(int depth) {
    using expr::Expr;
    using expr::Op;
    if (depth <= 0 || pick(4) == 0) return leaf();
    switch (pick(9)) {
      case 0: return Expr::unary(Op::sin, smooth(depth - 1));
      case 1: return Expr::unary(Op::cos, smooth(depth - 1));
      case 2: return Expr::unary(Op::exp, Expr::unary(Op::sin, smooth(depth - 1)));
      case 3: return Expr::unary(Op::neg, smooth(depth - 1));
      case 4: return Expr::binary(Op::add, smooth(depth - 1), smooth(depth - 1));
      case 5: return Expr::binary(Op::sub, smooth(depth - 1), smooth(depth - 1));
      case 6: return Expr::binary(Op::mul, smooth(depth - 1), smooth(depth - 1));
      case 7: {
        Expr const den = Expr::binary(Op::add, Expr::number(2.0), Expr::unary(Op::cos, smooth(depth - 1)));
        return Expr::binary(Op::div, smooth(depth - 1), den);
      }
      default: return Expr::binary(Op::pow, smooth(depth - 1), Expr::number(static_cast<double>(2 + pick(2))));
    }
  }

  // Any grammar construct, for round trips; evaluation may fail.
  expr::Expr any(int depth) {
    using expr::Expr;
    using expr::Op;
    if (depth <= 0 || pick(5) == 0) return leaf();
    static constexpr Op unary[] = {Op::neg, Op::sin, Op::cos, Op::exp, Op::log, Op::abs, Op::sqrt};
    static constexpr Op binary[] = {Op::add, Op::sub, Op::mul, Op::div, Op::pow};
    if (pick(2) == 0) return Expr::unary(unary[pick(7)], any(depth - 1));
    Op const op = binary[pick(5)];
    if (op == Op::pow) {
      Expr exponent = pick(2) == 0 ? constant() : Expr::unary(Op::neg, constant());
      return Expr::binary(op, any(depth - 1), exponent);
    }
    return Expr::binary(op, any(depth - 1), any(depth - 1));
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  expr::Expr constant() {
    if (pick(4) == 0) return expr::Expr::pi();
    // Mix of short decimals and full-precision doubles.
    if (pick(2) == 0) return expr::Expr::number(pick(40) / 8.0);
    return expr::Expr::number(uniform(0.0, 3.0));
  }

  expr::Expr leaf() { return pick(2) == 0 ? expr::Expr::var() : constant(); }

  std::mt19937_64 rng_;
};

inline double central_difference(expr::Expr const& e, double t, double h = 1e-6) {
  return (expr::eval(e, t + h) - expr::eval(e, t - h)) / (2.0 * h);
}

}  // namespace shiftop::testing
