#include "shiftop/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace shiftop {

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0 || r == 0.0) r = 0.0;
  return r;
}

double circle_distance(double s, double t) {
  double const d = std::abs(wrap01(s) - wrap01(t));
  return std::min(d, 1.0 - d);
}

// Arc

Arc Arc::make(double start, double end, ArcKind kind) {
  Arc a;
  a.start = wrap01(start);
  a.end = wrap01(end);
  a.kind = kind;
  a.full = circle_distance(a.start, a.end) <= kPointTolerance;
  if (a.full) a.end = a.start;
  return a;
}

Arc Arc::circle() {
  Arc a;
  a.kind = ArcKind::closed;
  a.full = true;
  return a;
}

double Arc::length() const {
  if (full) return 1.0;
  double const len = wrap01(end - start);
  return len == 0.0 ? 1.0 : len;
}

double Arc::offset(double t) const { return wrap01(t - start); }

double Arc::point_at(double s) const { return wrap01(start + s); }

bool Arc::contains(double t, double tol) const {
  if (full && kind == ArcKind::closed) return true;
  double const o = offset(t);
  double const len = length();
  if (kind == ArcKind::open) {
    double const back = 1.0 - o;
    return o > tol && back > tol && o < len - tol;
  }
  return o <= len + tol || o >= 1.0 - tol;
}

// Diffeomorphism

Diffeomorphism::Diffeomorphism(expr::Expr lift, expr::Expr derivative, Orientation orientation)
    : lift_(std::move(lift)),
      derivative_(std::move(derivative)),
      orientation_(orientation),
      l0_(expr::eval(lift_, 0.0)) {}

std::shared_ptr<Diffeomorphism const> Diffeomorphism::create(expr::Expr lift, OrientationHint hint, int grid) {
  if (grid < 16) throw InvalidArgument("monotonicity grid too small");
  expr::Expr derivative = expr::differentiate(lift);
  try {
    double const l0 = expr::eval(lift, 0.0);
    double const l1 = expr::eval(lift, 1.0);
    double const span = l1 - l0;
    if (std::abs(std::abs(span) - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "lift must satisfy |L(1) - L(0)| = 1, got " << std::abs(span);
      throw ShiftError(msg.str());
    }
    Orientation const orientation = span > 0.0 ? Orientation::preserving : Orientation::reversing;
    if (hint == OrientationHint::preserve && orientation != Orientation::preserving) {
      throw ShiftError("lift is decreasing but orientation 'preserve' was requested");
    }
    if (hint == OrientationHint::reverse && orientation != Orientation::reversing) {
      throw ShiftError("lift is increasing but orientation 'reverse' was requested");
    }
    double const sigma = static_cast<double>(orientation);
    double prev = l0;
    for (int i = 1; i <= grid; ++i) {
      double const t = static_cast<double>(i) / grid;
      double const cur = expr::eval(lift, t);
      if ((cur - prev) * sigma <= 0.0) {
        std::ostringstream msg;
        msg << "lift is not strictly monotone near t=" << t;
        throw ShiftError(msg.str());
      }
      prev = cur;
    }
    for (int i = 0; i < grid; ++i) {
      double const t = static_cast<double>(i) / grid;
      if (expr::eval(derivative, t) * sigma <= 0.0) {
        std::ostringstream msg;
        msg << "lift derivative vanishes or changes sign near t=" << t;
        throw ShiftError(msg.str());
      }
    }
    return std::shared_ptr<Diffeomorphism const>(
        new Diffeomorphism(std::move(lift), std::move(derivative), orientation));
  } catch (expr::DomainError const& e) {
    throw ShiftError(std::string("lift cannot be evaluated on [0, 1]: ") + e.what());
  }
}

double Diffeomorphism::lift(double x) const {
  double fl = std::floor(x);
  double s = x - fl;
  if (s >= 1.0) {
    s = 0.0;
    fl += 1.0;
  }
  return expr::eval(lift_, s) + sigma() * fl;
}

double Diffeomorphism::derivative(double t) const { return expr::eval(derivative_, wrap01(t)); }

double Diffeomorphism::lift_inverse(double y) const {
  double const sigma = static_cast<double>(orientation_);
  double const n = sigma > 0.0 ? std::floor(y - l0_) : std::floor(l0_ - y);
  double const target = sigma > 0.0 ? y - n : y + n;
  auto const g = [&](double s) { return expr::eval(lift_, s) - target; };

  double a = 0.0;
  double b = 1.0;
  double ga = g(a);
  double gb = g(b);
  if (ga * sigma >= 0.0) return n;
  if (gb * sigma <= 0.0) return 1.0 + n;
  double s = a + ga / (ga - gb);
  for (int iter = 0; iter < 200; ++iter) {
    double const gs = g(s);
    if (gs == 0.0) return s + n;
    if (gs * sigma < 0.0) {
      a = s;
    } else {
      b = s;
    }
    double const slope = expr::eval(derivative_, s);
    double next = s - gs / slope;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - s) <= 1e-15 || b - a <= 1e-14) return next + n;
    s = next;
  }
  throw ShiftError("inverse lift did not converge; the lift may not be monotone");
}

// Shift

Shift::Shift(std::shared_ptr<Diffeomorphism const> base, std::int64_t power) : base_(std::move(base)), power_(power) {
  if (!base_) throw InvalidArgument("shift requires a base diffeomorphism");
}

Shift Shift::from_lift(std::string const& lift, OrientationHint hint) {
  return Shift(Diffeomorphism::create(expr::parse(lift), hint));
}

Orientation Shift::orientation() const {
  if (base_->orientation() == Orientation::reversing && (power_ % 2 != 0)) return Orientation::reversing;
  return Orientation::preserving;
}

std::int64_t Shift::base_steps(std::int64_t k) const {
  std::int64_t const steps = power_ * k;
  if (steps > kIterationGuard || steps < -kIterationGuard) {
    throw ShiftError("orbit index exceeds the iteration guard of 1000000");
  }
  return steps;
}

double Shift::lift_iterate(double x, std::int64_t k) const {
  std::int64_t const steps = base_steps(k);
  if (steps >= 0) {
    for (std::int64_t i = 0; i < steps; ++i) x = base_->lift(x);
  } else {
    for (std::int64_t i = 0; i < -steps; ++i) x = base_->lift_inverse(x);
  }
  return x;
}

double Shift::apply(double t, std::int64_t k) const {
  if (k == 0) return wrap01(t);
  return wrap01(lift_iterate(t, k));
}

double Shift::derivative(double t, std::int64_t k) const {
  std::int64_t const steps = base_steps(k);
  if (steps == 0) return 1.0;
  auto const forward = [this](double x, std::int64_t count) {
    double product = 1.0;
    for (std::int64_t i = 0; i < count; ++i) {
      product *= base_->derivative(x);
      x = base_->lift(x);
    }
    return product;
  };
  if (steps > 0) return forward(t, steps);
  double x = t;
  for (std::int64_t i = 0; i < -steps; ++i) x = base_->lift_inverse(x);
  return 1.0 / forward(x, -steps);
}

bool Shift::is_identity() const {
  if (power_ == 0) return true;
  for (int i = 0; i < 64; ++i) {
    double const t = (i + 0.5) / 64.0;
    if (circle_distance(apply(t), t) > kPointTolerance) return false;
  }
  return true;
}

std::string Shift::describe() const {
  std::string out = "lift " + expr::serialize(base_->lift_expr());
  if (power_ != 1) out += " iterated " + std::to_string(power_) + " times";
  return out;
}

// Periodic structure

namespace {

struct Multiplicity {
  Orientation orientation;
  int m;
  std::int64_t winding;
};

std::pair<double, double> displacement_range(Shift const& s, int j, int cells) {
  auto const d = [&s, j](double t) { return s.lift_iterate(t, j) - t; };
  std::vector<double> values(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) values[static_cast<std::size_t>(i)] = d(static_cast<double>(i) / cells);
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  // Extrema between nodes matter for tangential periodic points.
  int const bits = std::numeric_limits<double>::digits / 2;
  for (int i = 0; i < cells; ++i) {
    double const vl = values[static_cast<std::size_t>((i + cells - 1) % cells)];
    double const vc = values[static_cast<std::size_t>(i)];
    double const vr = values[static_cast<std::size_t>((i + 1) % cells)];
    double const a = static_cast<double>(i - 1) / cells;
    double const b = static_cast<double>(i + 1) / cells;
    if (vc == vl && vc == vr) continue;
    if (vc <= vl && vc <= vr) {
      lo = std::min(lo, boost::math::tools::brent_find_minima(d, a, b, bits).second);
    }
    if (vc >= vl && vc >= vr) {
      auto const neg = [&d](double t) { return -d(t); };
      hi = std::max(hi, -boost::math::tools::brent_find_minima(neg, a, b, bits).second);
    }
  }
  return {lo, hi};
}

Multiplicity detect(Shift const& s, StructureOptions const& options) {
  if (options.m_max < 1) throw InvalidArgument("m_max must be at least 1");
  if (s.orientation() == Orientation::reversing) {
    auto const [lo, hi] = displacement_range(s, 2, options.cells);
    double const n = std::ceil(lo - options.flat_tol);
    if (n > hi + options.flat_tol) throw ShiftError("reversing shift without fixed points of its square");
    return {Orientation::reversing, 2, static_cast<std::int64_t>(n)};
  }
  for (int j = 1; j <= options.m_max; ++j) {
    auto const [lo, hi] = displacement_range(s, j, options.cells);
    double const n = std::ceil(lo - options.flat_tol);
    if (n <= hi + options.flat_tol) return {Orientation::preserving, j, static_cast<std::int64_t>(n)};
  }
  throw ShiftError("no periodic structure up to m_max=" + std::to_string(options.m_max));
}

std::int64_t winding_at(Shift const& s, int m, double t) {
  return static_cast<std::int64_t>(std::llround(s.lift_iterate(t, m) - t));
}

void sort_unique(std::vector<double>& values) {
  for (auto& v : values) v = wrap01(v);
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (!out.empty() && circle_distance(out.back(), v) <= kPointTolerance) continue;
    out.push_back(v);
  }
  if (out.size() > 1 && circle_distance(out.front(), out.back()) <= kPointTolerance) out.pop_back();
  values = std::move(out);
}

}  // namespace

bool PeriodicStructure::in_lambda(double t, double tol) const {
  for (double p : lambda_points) {
    if (circle_distance(p, t) <= tol) return true;
  }
  for (double p : y_prime) {
    if (circle_distance(p, t) <= tol) return true;
  }
  for (auto const& arc : lambda_arcs) {
    Arc closed = arc;
    closed.kind = ArcKind::closed;
    if (closed.contains(t, tol)) return true;
  }
  return false;
}

std::optional<std::size_t> PeriodicStructure::gamma_index(double t, double tol) const {
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i].arc.contains(t, tol)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> PeriodicStructure::omega_index(double t, double tol) const {
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i].full && omega[i].kind == ArcKind::closed) return i;
    if (omega[i].contains(t, tol)) return i;
  }
  return std::nullopt;
}

std::pair<Orientation, int> detect_orientation_and_multiplicity(Shift const& s, StructureOptions const& options) {
  auto const found = detect(s, options);
  return {found.orientation, found.m};
}

PeriodicStructure compute_periodic_structure(Shift const& s, StructureOptions const& options) {
  auto const found = detect(s, options);
  PeriodicStructure ps;
  ps.m = found.m;
  ps.orientation = s.orientation();
  ps.winding = found.winding;
  ps.detected = true;

  int const m = found.m;
  double const n = static_cast<double>(found.winding);
  expr::RealFunction const displacement = [&s, m, n](double t) { return s.lift_iterate(t, m) - t - n; };
  expr::ZeroOptions zopt;
  zopt.cells = options.cells;
  zopt.tol = options.tol;
  zopt.flat_tol = options.flat_tol;
  zopt.periodic = true;
  for (auto const& z : expr::find_zeros(displacement, 0.0, 1.0, zopt)) {
    switch (z.kind) {
      case expr::ZeroKind::interval:
        ps.lambda_arcs.push_back(z.full ? Arc::circle() : Arc::make(z.t, z.t_end, ArcKind::closed));
        break;
      case expr::ZeroKind::tangential:
        ps.lambda_points.push_back(z.t);
        if (z.suspect) {
          ps.uncertain = true;
          ps.suspect_points.push_back(z.t);
        }
        break;
      case expr::ZeroKind::crossing:
        ps.lambda_points.push_back(z.t);
        break;
    }
  }
  if (ps.lambda_points.empty() && ps.lambda_arcs.empty()) {
    throw ShiftError("periodic points were expected but none were located");
  }
  for (double p : ps.lambda_points) ps.y.push_back(p);
  for (auto const& arc : ps.lambda_arcs) {
    if (arc.full) continue;
    ps.y.push_back(arc.start);
    ps.y.push_back(arc.end);
  }
  sort_unique(ps.y);
  decompose_components(ps, s);
  return ps;
}

void decompose_components(PeriodicStructure& ps, Shift const& s) {
  ps.omega.clear();
  ps.gamma.clear();
  for (auto const& arc : ps.lambda_arcs) {
    if (arc.full) {
      ps.omega.push_back(Arc::circle());
    } else {
      ps.omega.push_back(Arc::make(arc.start, arc.end, ArcKind::open));
    }
  }
  if (ps.y.empty()) {
    if (ps.omega.empty()) throw ShiftError("structure has neither boundary points nor periodic arcs");
    return;
  }
  auto const is_lambda_arc = [&ps](Arc const& candidate) {
    double const mid = candidate.midpoint();
    for (auto const& arc : ps.lambda_arcs) {
      if (arc.contains(mid, 0.0)) return true;
    }
    return false;
  };
  std::size_t const count = ps.y.size();
  for (std::size_t i = 0; i < count; ++i) {
    double const start = ps.y[i];
    double const end = ps.y[(i + 1) % count];
    Arc candidate = Arc::make(start, end, ArcKind::open);
    if (count == 1) {
      candidate.full = true;
      candidate.end = candidate.start;
    }
    if (is_lambda_arc(candidate)) continue;
    double const mid = candidate.midpoint();
    double const d = s.lift_iterate(mid, ps.m) - mid - static_cast<double>(ps.winding);
    GammaArc g;
    g.arc = candidate;
    g.forward_positive = d > 0.0;
    g.attracting = g.forward_positive ? candidate.end : candidate.start;
    g.repelling = g.forward_positive ? candidate.start : candidate.end;
    ps.gamma.push_back(g);
  }
}

PeriodicStructure explicit_structure(Shift const& s, int m, std::vector<double> lambda_points,
                                     std::vector<Arc> lambda_arcs, std::vector<double> y_prime) {
  if (m < 1) throw InvalidArgument("multiplicity must be positive");
  PeriodicStructure ps;
  ps.m = m;
  ps.orientation = s.orientation();
  ps.lambda_points = std::move(lambda_points);
  ps.lambda_arcs = std::move(lambda_arcs);
  ps.y_prime = std::move(y_prime);
  sort_unique(ps.lambda_points);
  sort_unique(ps.y_prime);
  double anchor = 0.0;
  if (!ps.lambda_points.empty()) {
    anchor = ps.lambda_points.front();
  } else if (!ps.lambda_arcs.empty()) {
    anchor = ps.lambda_arcs.front().start;
  } else if (!ps.y_prime.empty()) {
    anchor = ps.y_prime.front();
  } else {
    throw InvalidArgument("explicit structure needs at least one periodic point");
  }
  ps.winding = winding_at(s, m, anchor);
  for (double p : ps.lambda_points) ps.y.push_back(p);
  for (double p : ps.y_prime) ps.y.push_back(p);
  for (auto const& arc : ps.lambda_arcs) {
    if (arc.full) continue;
    ps.y.push_back(arc.start);
    ps.y.push_back(arc.end);
  }
  sort_unique(ps.y);
  for (double p : ps.y) {
    double const d = s.lift_iterate(p, m) - p - static_cast<double>(ps.winding);
    if (std::abs(d) > 1e-9) {
      std::ostringstream msg;
      msg << "declared point " << p << " is not periodic with multiplicity " << m;
      throw InvalidArgument(msg.str());
    }
  }
  decompose_components(ps, s);
  return ps;
}

std::pair<double, double> orbit_limit_endpoints(PeriodicStructure const& ps, double t) {
  t = wrap01(t);
  if (ps.in_lambda(t)) return {t, t};
  if (auto const idx = ps.gamma_index(t)) {
    auto const& g = ps.gamma[*idx];
    return {g.repelling, g.attracting};
  }
  double nearest = t;
  double best = std::numeric_limits<double>::infinity();
  for (double y : ps.y) {
    double const d = circle_distance(y, t);
    if (d < best) {
      best = d;
      nearest = y;
    }
  }
  std::ostringstream msg;
  msg << "point " << t << " lies in no component; nearest boundary point is " << nearest;
  throw ShiftError(msg.str());
}

}  // namespace shiftop
