#include "shiftop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shiftop {

// Coefficients

CircleFunction::CircleFunction() : CircleFunction(constant(0.0)) {}

CircleFunction::CircleFunction(expr::Expr e)
    : f_([e](double t) { return expr::eval(e, t); }), description_(expr::serialize(e)), expression_(e) {}

CircleFunction::CircleFunction(std::function<double(double)> f, std::string description)
    : f_(std::move(f)), description_(std::move(description)) {}

CircleFunction CircleFunction::constant(double c) { return CircleFunction(expr::build::num(c)); }

double orbit_product(CircleFunction const& f, Shift const& s, int m, double t) {
  if (m < 1) throw InvalidArgument("orbit product needs m >= 1");
  double product = 1.0;
  double x = wrap01(t);
  for (int i = 0; i < m; ++i) {
    product *= f(x);
    if (i + 1 < m) x = s.apply(x);
  }
  return product;
}

CircleFunction orbit_product_function(CircleFunction const& f, Shift const& s, int m) {
  if (m == 1) return f;
  std::string const description = "orbit product of order " + std::to_string(m) + " of " + f.description();
  return CircleFunction([f, s, m](double t) { return orbit_product(f, s, m, t); }, description);
}

StructureOptions Tolerances::structure_options() const {
  StructureOptions o;
  o.m_max = m_max;
  o.cells = cells;
  o.tol = zero;
  o.flat_tol = flat;
  return o;
}

expr::ZeroOptions Tolerances::zero_options() const {
  expr::ZeroOptions o;
  o.cells = cells;
  o.tol = zero;
  o.flat_tol = flat;
  return o;
}

void check_periodic(CircleFunction const& f, std::string const& name) {
  double const f0 = f(0.0);
  double const f1 = f(1.0);
  if (!(std::abs(f0 - f1) <= 1e-9 * (1.0 + std::abs(f0)))) {
    std::ostringstream msg;
    msg << "coefficient " << name << " is not 1-periodic: f(0)=" << f0 << ", f(1)=" << f1;
    throw InvalidArgument(msg.str());
  }
}

OperatorSpec make_operator(CircleFunction a, CircleFunction b, Shift shift, SpaceIndices space,
                           Tolerances const& tol) {
  PeriodicStructure structure = compute_periodic_structure(shift, tol.structure_options());
  return make_operator(std::move(a), std::move(b), std::move(shift), std::move(structure), std::move(space));
}

OperatorSpec make_operator(CircleFunction a, CircleFunction b, Shift shift, PeriodicStructure structure,
                           SpaceIndices space) {
  check_periodic(a, "a");
  check_periodic(b, "b");
  return OperatorSpec{std::move(a), std::move(b), std::move(shift), std::move(structure), std::move(space)};
}

// Eta functions

EtaValues eta_values(OperatorSpec const& op, double t) {
  int const m = op.structure.m;
  double const am = std::abs(orbit_product(op.a, op.shift, m, t));
  double const bm = std::abs(orbit_product(op.b, op.shift, m, t));
  double const dilation = std::abs(op.shift.derivative(wrap01(t), m));
  double const pa = std::pow(dilation, -op.space.alpha);
  double const pb = std::pow(dilation, -op.space.beta);
  return {am - bm * std::min(pa, pb), am - bm * std::max(pa, pb)};
}

EtaLimits eta_limits(OperatorSpec const& op, double t) {
  auto const [minus, plus] = orbit_limit_endpoints(op.structure, t);
  EtaValues const vm = eta_values(op, minus);
  EtaValues const vp = eta_values(op, plus);
  return {vm.eta0, vp.eta0, vm.eta1, vp.eta1, minus, plus};
}

EtaLimits eta_limits_iterated(OperatorSpec const& op, double t, int steps) {
  std::int64_t const k = static_cast<std::int64_t>(op.structure.m) * steps;
  double const plus = op.shift.apply(t, k);
  double const minus = op.shift.apply(t, -k);
  EtaValues const vm = eta_values(op, minus);
  EtaValues const vp = eta_values(op, plus);
  return {vm.eta0, vp.eta0, vm.eta1, vp.eta1, minus, plus};
}

EtaProfile eta_profile(OperatorSpec const& op) {
  EtaProfile profile;
  for (std::size_t i = 0; i < op.structure.gamma.size(); ++i) {
    profile.arcs.push_back({i, eta_limits(op, op.structure.gamma[i].arc.midpoint())});
  }
  for (double y : op.structure.y) profile.points.push_back({y, eta_values(op, y)});
  return profile;
}

// Partition

std::string region_label(Region r) {
  switch (r) {
    case Region::carleman: return "G1";
    case Region::a_dominant: return "G2";
    case Region::b_dominant: return "G3";
    case Region::right_control: return "G4";
    case Region::left_control: return "G5";
    case Region::vanishing: return "none";
    case Region::degenerate: return "degenerate";
  }
  return "degenerate";
}

namespace {

Truth positive(double x, double band) {
  if (x > band) return Truth::yes;
  if (x < -band) return Truth::no;
  return Truth::unknown;
}

Truth negative(double x, double band) { return positive(-x, band); }

}  // namespace

Truth truth_and(Truth x, Truth y) {
  if (x == Truth::no || y == Truth::no) return Truth::no;
  if (x == Truth::unknown || y == Truth::unknown) return Truth::unknown;
  return Truth::yes;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::no: return "false";
    case Truth::yes: return "true";
    case Truth::unknown: return "unknown";
  }
  return "unknown";
}

Region classify_limits(EtaLimits const& l, double band) {
  struct Candidate {
    Region region;
    Truth truth;
  };
  Candidate const candidates[] = {
      {Region::a_dominant, truth_and(positive(l.eta1_minus, band), positive(l.eta1_plus, band))},
      {Region::b_dominant, truth_and(negative(l.eta0_minus, band), negative(l.eta0_plus, band))},
      {Region::right_control, truth_and(negative(l.eta0_plus, band), positive(l.eta1_minus, band))},
      {Region::left_control, truth_and(negative(l.eta0_minus, band), positive(l.eta1_plus, band))},
  };
  bool undetermined = false;
  for (auto const& c : candidates) {
    if (c.truth == Truth::yes) return c.region;
    if (c.truth == Truth::unknown) undetermined = true;
  }
  return undetermined ? Region::degenerate : Region::vanishing;
}

Region GammaPartition::classify(double t, double tol) const {
  t = wrap01(t);
  for (auto const& p : points) {
    if (circle_distance(p.t, t) <= tol) return p.region;
  }
  for (auto const& arc : carleman) {
    if (arc.contains(t, 0.0)) return Region::carleman;
  }
  for (auto const& a : arcs) {
    if (a.arc.contains(t, 0.0)) return a.region;
  }
  std::ostringstream msg;
  msg << "point " << t << " is not covered by the partition";
  throw Error(msg.str());
}

std::vector<double> GammaPartition::degenerate_locations() const {
  std::vector<double> out;
  for (auto const& a : arcs) {
    if (a.region == Region::degenerate) out.push_back(a.arc.midpoint());
  }
  for (auto const& p : points) {
    if (p.region == Region::degenerate) out.push_back(p.t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GammaPartition::has(Region r) const {
  if (r == Region::carleman) return !carleman.empty();
  for (auto const& a : arcs) {
    if (a.region == r) return true;
  }
  for (auto const& p : points) {
    if (p.region == r) return true;
  }
  return false;
}

GammaPartition build_partition(OperatorSpec const& op, Tolerances const& tol) {
  GammaPartition partition;
  partition.carleman = op.structure.omega;
  for (std::size_t i = 0; i < op.structure.gamma.size(); ++i) {
    ArcClass c;
    c.gamma_index = i;
    c.arc = op.structure.gamma[i].arc;
    c.limits = eta_limits(op, c.arc.midpoint());
    c.region = classify_limits(c.limits, tol.band);
    partition.arcs.push_back(c);
  }
  for (double y : op.structure.y) {
    PointClass p;
    p.t = y;
    p.eta = eta_values(op, y);
    p.region = classify_limits({p.eta.eta0, p.eta.eta0, p.eta.eta1, p.eta.eta1, y, y}, tol.band);
    p.declared_limit = std::any_of(op.structure.y_prime.begin(), op.structure.y_prime.end(),
                                   [y](double q) { return circle_distance(q, y) <= kPointTolerance; });
    partition.points.push_back(p);
  }
  return partition;
}

namespace {

double sigma_in_region(OperatorSpec const& op, Region region, double t) {
  int const m = op.structure.m;
  switch (region) {
    case Region::carleman:
      return orbit_product(op.a, op.shift, m, t) - orbit_product(op.b, op.shift, m, t);
    case Region::a_dominant:
      return orbit_product(op.a, op.shift, m, t);
    case Region::b_dominant:
      return -orbit_product(op.b, op.shift, m, t);
    case Region::degenerate: {
      std::ostringstream msg;
      msg << "classification degenerate at t=" << t;
      throw Error(msg.str());
    }
    default:
      return 0.0;
  }
}

struct ArcZero {
  expr::Zero zero;
  double s = 0.0;
  double s_end = 0.0;
};

// Zeros of f over the closure of an arc, in arc-offset coordinates.
std::vector<ArcZero> zeros_on_arc(std::function<double(double)> const& f, Arc const& arc, Tolerances const& tol) {
  expr::ZeroOptions options = tol.zero_options();
  std::vector<ArcZero> out;
  if (arc.full && arc.kind == ArcKind::closed) {
    options.periodic = true;
    for (auto const& z : expr::find_zeros(f, 0.0, 1.0, options)) out.push_back({z, z.t, z.t_end});
    return out;
  }
  double const len = arc.length();
  expr::RealFunction const g = [&f, &arc](double s) { return f(arc.point_at(s)); };
  for (auto z : expr::find_zeros(g, 0.0, len, options)) {
    ArcZero az{z, z.t, z.t_end};
    az.zero.t = arc.point_at(z.t);
    az.zero.t_end = arc.point_at(z.t_end);
    out.push_back(az);
  }
  return out;
}

struct OrbitZero {
  double lo = 0.0;
  double hi = 0.0;
  bool suspect = false;
};

std::vector<OrbitZero> interior_zeros(CircleFunction const& f, Arc const& arc, Tolerances const& tol) {
  std::vector<OrbitZero> out;
  double const len = arc.length();
  for (auto const& az : zeros_on_arc([&f](double t) { return f(t); }, arc, tol)) {
    double lo = az.s;
    double hi = az.s_end;
    if (az.zero.kind != expr::ZeroKind::interval) {
      if (lo <= tol.match || lo >= len - tol.match) continue;
    } else {
      lo = std::max(lo, tol.match);
      hi = std::min(hi, len - tol.match);
      if (lo > hi) continue;
    }
    out.push_back({arc.point_at(lo), arc.point_at(hi), az.zero.suspect});
  }
  return out;
}

// Forward alpha_m orbit test of the zero interval p (already moved by r
// steps of alpha) against the zero interval q inside the same gamma arc.
std::optional<std::int64_t> orbit_hit(OperatorSpec const& op, GammaArc const& g, double x_lo, double x_hi,
                                      OrbitZero const& q, std::int64_t n0, std::int64_t min_n, Tolerances const& tol) {
  double const len = g.arc.length();
  auto const u = [&g, len](double x) {
    double const o = g.arc.offset(x);
    return g.forward_positive ? o : len - o;
  };
  double const q1 = u(q.lo);
  double const q2 = u(q.hi);
  double const uq_lo = std::min(q1, q2);
  double const uq_hi = std::max(q1, q2);
  int const m = op.structure.m;
  std::int64_t const max_steps = Shift::kIterationGuard / m;
  std::int64_t n = n0;
  double previous = -1.0;
  for (std::int64_t step = 0; step <= max_steps; ++step) {
    double const a1 = u(x_lo);
    double const a2 = u(x_hi);
    double const up_lo = std::min(a1, a2);
    double const up_hi = std::max(a1, a2);
    if (n >= min_n && up_lo <= uq_hi + tol.match && up_hi >= uq_lo - tol.match) return n;
    if (up_lo > uq_hi + tol.match) return std::nullopt;
    if (up_lo <= previous) return std::nullopt;
    previous = up_lo;
    x_lo = op.shift.apply(x_lo, m);
    x_hi = op.shift.apply(x_hi, m);
    n += m;
  }
  return std::nullopt;
}

// Shared engine for R (first = zeros of a, min_n = 0) and L (first = zeros
// of b, min_n = 1).  Along each orbit converging to the attracting endpoint
// the condition needs a single switch index k0: zeros of the "first"
// function only before k0 and zeros of the other only at or after it.  A
// violation is exactly a zero of the second function reached by the forward
// orbit of a zero of the first.
ConditionResult orbit_condition(OperatorSpec const& op, GammaPartition const& partition, Tolerances const& tol,
                                Region target, bool first_is_a, std::int64_t min_n) {
  ConditionResult result;
  std::vector<OrbitZero> za;
  std::vector<OrbitZero> zb;
  for (auto const& arc : partition.arcs) {
    if (arc.region != target) continue;
    auto const a_zeros = interior_zeros(op.a, arc.arc, tol);
    auto const b_zeros = interior_zeros(op.b, arc.arc, tol);
    za.insert(za.end(), a_zeros.begin(), a_zeros.end());
    zb.insert(zb.end(), b_zeros.begin(), b_zeros.end());
  }
  result.zeros_a = za.size();
  result.zeros_b = zb.size();
  auto const& first = first_is_a ? za : zb;
  auto const& second = first_is_a ? zb : za;
  for (auto const* set : {&za, &zb}) {
    for (auto const& z : *set) {
      if (z.suspect) result.suspect.push_back(z.lo);
    }
  }

  int const m = op.structure.m;
  for (auto const& p : first) {
    for (int r = 0; r < m; ++r) {
      double const x_lo = op.shift.apply(p.lo, r);
      double const x_hi = op.shift.apply(p.hi, r);
      auto const idx = op.structure.gamma_index(x_lo);
      if (!idx) continue;
      GammaArc const& g = op.structure.gamma[*idx];
      for (auto const& q : second) {
        auto const qidx = op.structure.gamma_index(q.lo);
        if (!qidx || *qidx != *idx) continue;
        auto const n = orbit_hit(op, g, x_lo, x_hi, q, r, min_n, tol);
        if (!n) continue;
        if (p.suspect || q.suspect) continue;
        result.holds = Truth::no;
        result.witness = OrbitWitness{p.lo, q.lo, *n};
        return result;
      }
    }
  }
  result.holds = result.suspect.empty() ? Truth::yes : Truth::unknown;
  return result;
}

}  // namespace

double sigma_A(OperatorSpec const& op, GammaPartition const& partition, double t) {
  return sigma_in_region(op, partition.classify(t), wrap01(t));
}

ConditionResult check_R(OperatorSpec const& op, GammaPartition const& partition, Tolerances const& tol) {
  return orbit_condition(op, partition, tol, Region::right_control, true, 0);
}

ConditionResult check_L(OperatorSpec const& op, GammaPartition const& partition, Tolerances const& tol) {
  return orbit_condition(op, partition, tol, Region::left_control, false, 1);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::two_sided: return "two_sided";
    case Verdict::right_only: return "right_only";
    case Verdict::left_only: return "left_only";
    case Verdict::neither: return "neither";
    case Verdict::undecidable: return "undecidable";
  }
  return "undecidable";
}

namespace {

Verdict assemble(Truth right, Truth left) {
  if (right == Truth::yes && left == Truth::yes) return Verdict::two_sided;
  if (right == Truth::yes && left == Truth::no) return Verdict::right_only;
  if (right == Truth::no && left == Truth::yes) return Verdict::left_only;
  if (right == Truth::no && left == Truth::no) return Verdict::neither;
  return Verdict::undecidable;
}

void sample_extrema(OperatorSpec const& op, Region region, std::vector<double> const& ts,
                    std::vector<RegionExtrema>& out) {
  if (ts.empty()) return;
  auto it = std::find_if(out.begin(), out.end(), [region](RegionExtrema const& e) { return e.region == region; });
  if (it == out.end()) {
    RegionExtrema e;
    e.region = region;
    e.min = std::numeric_limits<double>::infinity();
    e.max = -e.min;
    e.min_abs = e.min;
    out.push_back(e);
    it = out.end() - 1;
  }
  for (double t : ts) {
    double const v = region == Region::degenerate ? 0.0 : sigma_in_region(op, region, t);
    it->min = std::min(it->min, v);
    it->max = std::max(it->max, v);
    it->min_abs = std::min(it->min_abs, std::abs(v));
    ++it->samples;
  }
}

std::vector<double> arc_samples(Arc const& arc, int count) {
  std::vector<double> ts;
  double const len = arc.length();
  for (int i = 0; i < count; ++i) ts.push_back(arc.point_at(len * (i + 0.5) / count));
  return ts;
}

}  // namespace

InvertibilityReport decide(OperatorSpec const& op, Tolerances const& tol) {
  InvertibilityReport report;
  report.warnings = op.space.warnings;
  report.partition = build_partition(op, tol);
  GammaPartition const& partition = report.partition;

  if (op.structure.uncertain) {
    std::ostringstream msg;
    msg << "periodic structure is uncertain: tangential fixed points of the iterated shift near";
    for (double t : op.structure.suspect_points) msg << ' ' << t;
    report.warnings.push_back(msg.str());
    report.right = report.left = Truth::unknown;
    report.verdict = Verdict::undecidable;
    report.witness = Witness{"uncertain_structure", op.structure.suspect_points.front(), Region::degenerate,
                             std::nullopt, msg.str()};
    return report;
  }

  Truth right = Truth::yes;
  Truth left = Truth::yes;
  std::vector<Witness> witnesses;
  int const m = op.structure.m;
  CircleFunction const am = orbit_product_function(op.a, op.shift, m);
  CircleFunction const bm = orbit_product_function(op.b, op.shift, m);

  auto const record_zeros = [&](std::function<double(double)> const& f, Arc const& arc, Region region) {
    for (auto const& az : zeros_on_arc(f, arc, tol)) {
      SigmaZero z{az.zero.t, az.zero.t_end, region, az.zero.kind, az.zero.suspect};
      report.sigma_zeros.push_back(z);
      right = left = Truth::no;
      witnesses.push_back({"sigma_zero", z.t, region, std::nullopt,
                           "sigma_A vanishes (" + expr::to_string(z.kind) + ") in " + region_label(region)});
    }
  };

  for (auto const& arc : partition.carleman) {
    record_zeros([&](double t) { return am(t) - bm(t); }, arc, Region::carleman);
    sample_extrema(op, Region::carleman, arc_samples(arc, 256), report.extrema);
  }

  for (auto const& arc : partition.arcs) {
    switch (arc.region) {
      case Region::a_dominant:
        record_zeros([&](double t) { return am(t); }, arc.arc, arc.region);
        break;
      case Region::b_dominant:
        record_zeros([&](double t) { return bm(t); }, arc.arc, arc.region);
        break;
      case Region::right_control:
        left = Truth::no;
        witnesses.push_back({"sigma_vanishes", arc.arc.midpoint(), arc.region, std::nullopt,
                             "sigma_A is zero on a right control arc"});
        break;
      case Region::left_control:
        right = Truth::no;
        witnesses.push_back({"sigma_vanishes", arc.arc.midpoint(), arc.region, std::nullopt,
                             "sigma_A is zero on a left control arc"});
        break;
      case Region::vanishing:
        right = left = Truth::no;
        witnesses.push_back({"sigma_vanishes", arc.arc.midpoint(), arc.region, std::nullopt,
                             "sigma_A is zero on an arc outside the control regions"});
        break;
      case Region::degenerate:
        break;
      case Region::carleman:
        break;
    }
    if (arc.region == Region::right_control || arc.region == Region::left_control ||
        arc.region == Region::vanishing) {
      report.sigma_zeros.push_back(
          {arc.arc.start, arc.arc.end, arc.region, expr::ZeroKind::interval, false});
    }
    if (arc.region != Region::degenerate) {
      sample_extrema(op, arc.region, arc_samples(arc.arc, 256), report.extrema);
    }
  }

  for (auto const& p : partition.points) {
    if (p.region == Region::degenerate) continue;
    sample_extrema(op, p.region, {p.t}, report.extrema);
    double const v = sigma_in_region(op, p.region, p.t);
    if (std::abs(v) <= tol.zero) {
      right = left = Truth::no;
      report.sigma_zeros.push_back({p.t, p.t, p.region, expr::ZeroKind::crossing, false});
      witnesses.push_back({"sigma_zero", p.t, p.region, std::nullopt,
                           "sigma_A vanishes at a periodic point (" + region_label(p.region) + ")"});
    }
    if (p.declared_limit && !(p.eta.eta0 * p.eta.eta1 > 0.0)) {
      right = left = Truth::no;
      witnesses.push_back({"limit_point", p.t, p.region, std::nullopt,
                           "eta0 * eta1 is not positive at a declared limit point of the boundary"});
    }
  }

  report.degenerate = partition.degenerate_locations();
  if (!report.degenerate.empty()) {
    right = truth_and(right, Truth::unknown);
    left = truth_and(left, Truth::unknown);
    witnesses.push_back({"degenerate", report.degenerate.front(), Region::degenerate, std::nullopt,
                         "eta limit within the tolerance band; classification refused"});
  }

  if (partition.has(Region::right_control)) {
    report.r_condition = check_R(op, partition, tol);
    right = truth_and(right, report.r_condition.holds);
    if (report.r_condition.witness) {
      witnesses.push_back({"orbit_pair", report.r_condition.witness->p, Region::right_control,
                           report.r_condition.witness,
                           "a zero of b lies on the forward orbit of a zero of a"});
    }
  }
  if (partition.has(Region::left_control)) {
    report.l_condition = check_L(op, partition, tol);
    left = truth_and(left, report.l_condition.holds);
    if (report.l_condition.witness) {
      witnesses.push_back({"orbit_pair", report.l_condition.witness->p, Region::left_control,
                           report.l_condition.witness,
                           "a zero of a lies on the strict forward orbit of a zero of b"});
    }
  }

  std::sort(report.sigma_zeros.begin(), report.sigma_zeros.end(),
            [](SigmaZero const& x, SigmaZero const& y) { return x.t < y.t; });
  report.right = right;
  report.left = left;
  report.verdict = assemble(right, left);
  if (report.verdict != Verdict::two_sided && !witnesses.empty()) report.witness = witnesses.front();
  return report;
}

// Adjoint and reduction

namespace {

PeriodicStructure reversed_structure(PeriodicStructure ps) {
  ps.winding = -ps.winding;
  for (auto& g : ps.gamma) {
    std::swap(g.attracting, g.repelling);
    g.forward_positive = !g.forward_positive;
  }
  return ps;
}

}  // namespace

OperatorSpec adjoint_spec(OperatorSpec const& op, Tolerances const& tol) {
  Shift const inverse = op.shift.inverse();
  Shift const forward = op.shift;
  CircleFunction const b = op.b;
  CircleFunction b_star(
      [b, inverse, forward](double t) {
        double const x = inverse.apply(t);
        return b(x) / std::abs(forward.derivative(x));
      },
      "adjoint weight of " + b.description());
  PeriodicStructure structure = op.structure.detected
                                    ? compute_periodic_structure(inverse, tol.structure_options())
                                    : reversed_structure(op.structure);
  return OperatorSpec{op.a, std::move(b_star), inverse, std::move(structure), associate_indices(op.space)};
}

Reduction reduce_to_fixed(OperatorSpec const& op, Tolerances const& tol) {
  int const m = op.structure.m;
  if (m == 1) return Reduction{op, true, std::nullopt};

  Shift const s = op.shift;
  CircleFunction const a_m = orbit_product_function(op.a, s, m);
  CircleFunction const b = op.b;
  CircleFunction const b_m(
      [b, s, m](double t) { return orbit_product(b, s, m, s.apply(t, m - 1)); },
      "orbit product of order " + std::to_string(m) + " of " + b.description() + " after " +
          std::to_string(m - 1) + " steps");
  Shift const shift_m = s.iterate(m);

  PeriodicStructure structure;
  if (op.structure.detected) {
    structure = compute_periodic_structure(shift_m, tol.structure_options());
  } else {
    structure = op.structure;
    structure.m = 1;
    structure.orientation = Orientation::preserving;
  }
  Reduction out{OperatorSpec{a_m, b_m, shift_m, std::move(structure), op.space}, true, std::nullopt};

  GammaPartition const partition = build_partition(op, tol);
  for (auto const& arc : partition.arcs) {
    if (arc.region != Region::right_control) continue;
    for (int i = 1; i < m; ++i) {
      auto const a_i = [&](double t) { return orbit_product(op.a, s, i, t); };
      for (auto const& az : zeros_on_arc(a_i, arc.arc, tol)) {
        std::vector<double> probes{az.zero.t};
        if (az.zero.kind == expr::ZeroKind::interval) {
          double const span = az.s_end - az.s;
          for (int k = 0; k <= 32; ++k) probes.push_back(arc.arc.point_at(az.s + span * k / 32.0));
        }
        for (double t : probes) {
          if (std::abs(op.b(s.apply(t, i - 1))) <= tol.vanish) {
            out.cond = false;
            out.witness = ReductionWitness{t, i};
            return out;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace shiftop
