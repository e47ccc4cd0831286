#include "shiftop/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace shiftop {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::boundary: return "boundary";
  }
  return "outside";
}

namespace {

std::vector<double> lambda_samples(PeriodicStructure const& ps) {
  std::vector<double> ts = ps.lambda_points;
  ts.insert(ts.end(), ps.y.begin(), ps.y.end());
  for (auto const& arc : ps.lambda_arcs) {
    double const len = arc.length();
    int const count = 64;
    for (int i = 0; i <= count; ++i) ts.push_back(arc.point_at(len * i / count));
  }
  return ts;
}

void require_fixed_points(PeriodicStructure const& ps) {
  if (ps.m != 1) {
    throw InvalidArgument("closed-form radius needs multiplicity 1; use the spectrum of the weighted shift for m > 1");
  }
}

struct Dilation {
  double low;
  double high;
};

Dilation dilation_factors(double derivative, SpaceIndices const& x) {
  double const d = std::abs(derivative);
  double const pa = std::pow(d, -x.alpha);
  double const pb = std::pow(d, -x.beta);
  return {std::min(pa, pb), std::max(pa, pb)};
}

double segment_distance(std::complex<double> p, std::complex<double> a, std::complex<double> b) {
  std::complex<double> const ab = b - a;
  double const len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double const u = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + u * ab));
}

}  // namespace

double radius_lebesgue(CircleFunction const& g, Shift const& s, PeriodicStructure const& ps, double p) {
  if (!(p > 1.0 && std::isfinite(p))) throw InvalidArgument("Lebesgue exponent must satisfy 1 < p < infinity");
  require_fixed_points(ps);
  double r = 0.0;
  for (double t : lambda_samples(ps)) {
    r = std::max(r, std::abs(g(t)) * std::pow(std::abs(s.derivative(t)), -1.0 / p));
  }
  return r;
}

double radius_bound(CircleFunction const& g, Shift const& s, PeriodicStructure const& ps, SpaceIndices const& x) {
  require_fixed_points(ps);
  double r = 0.0;
  for (double t : lambda_samples(ps)) {
    r = std::max(r, std::abs(g(t)) * dilation_factors(s.derivative(t), x).high);
  }
  return r;
}

std::vector<Annulus> one_sided_core_annuli(Shift const& s, GammaArc const& arc, SpaceIndices const& x) {
  std::vector<Annulus> out;
  for (double tau : {arc.repelling, arc.attracting}) {
    Dilation const f = dilation_factors(s.derivative(tau), x);
    out.push_back({f.low, f.high});
  }
  return out;
}

std::vector<Annulus> merge_annuli(std::vector<Annulus> annuli) {
  std::sort(annuli.begin(), annuli.end(),
            [](Annulus const& a, Annulus const& b) { return a.r_in < b.r_in || (a.r_in == b.r_in && a.r_out < b.r_out); });
  std::vector<Annulus> merged;
  for (auto const& a : annuli) {
    if (!merged.empty() && a.r_in <= merged.back().r_out) {
      merged.back().r_out = std::max(merged.back().r_out, a.r_out);
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

SpectrumSet shift_spectrum(CircleFunction const& d, Shift const& s, PeriodicStructure const& ps,
                           SpaceIndices const& x, int samples) {
  if (samples < 64) throw InvalidArgument("shift spectrum needs at least 64 samples");
  SpectrumSet ss;
  ss.m = ps.m;
  int const m = ps.m;
  double const inv_m = 1.0 / m;
  auto const d_m = [&](double t) { return orbit_product(d, s, m, t); };
  auto const bounds = [&](double tau) {
    Dilation const f = dilation_factors(s.derivative(tau, m), x);
    double const w = std::abs(d_m(tau));
    return Annulus{w * f.low, w * f.high};
  };

  for (auto const& arc : ps.omega) {
    std::vector<std::complex<double>> path;
    double const len = arc.length();
    bool const closed_loop = arc.full && arc.kind == ArcKind::closed;
    int const count = closed_loop ? samples : samples + 1;
    for (int i = 0; i < count; ++i) {
      double const t = closed_loop ? static_cast<double>(i) / samples : arc.point_at(len * i / samples);
      double const w = d_m(t);
      path.emplace_back(w, 0.0);
      double const radius = std::pow(std::abs(w), inv_m);
      double const base = (w < 0.0 ? std::numbers::pi : 0.0) * inv_m;
      for (int k = 0; k < m; ++k) {
        ss.curve.push_back(std::polar(radius, base + 2.0 * std::numbers::pi * k * inv_m));
      }
    }
    if (closed_loop && !path.empty()) path.push_back(path.front());
    for (std::size_t i = 1; i < path.size(); ++i) {
      ss.curve_resolution = std::max(ss.curve_resolution, 0.5 * std::abs(path[i] - path[i - 1]));
    }
    ss.curve_paths.push_back(std::move(path));
  }

  Tolerances tol;
  for (auto const& g : ps.gamma) {
    Annulus const lo = bounds(g.repelling);
    Annulus const hi = bounds(g.attracting);
    double const delta = std::min(lo.r_in, hi.r_in);
    double const big = std::max(lo.r_out, hi.r_out);

    double min_abs = std::min(std::abs(d_m(g.repelling)), std::abs(d_m(g.attracting)));
    double const len = g.arc.length();
    for (int i = 0; i <= samples; ++i) min_abs = std::min(min_abs, std::abs(d_m(g.arc.point_at(len * i / samples))));
    Arc closed = g.arc;
    closed.kind = ArcKind::closed;
    expr::RealFunction const along = [&](double u) { return d_m(closed.point_at(u)); };
    bool const has_zero = !expr::find_zeros(along, 0.0, len, tol.zero_options()).empty() ||
                          std::abs(d_m(closed.point_at(len))) <= tol.zero;
    bool const in_gc = !has_zero && min_abs > 1e-10;
    if (!has_zero && min_abs <= 1e-10) {
      ss.degenerate_gc = true;
      ss.notes.push_back("weight nearly vanishes on a gamma arc without a confirmed zero");
    }
    if (in_gc) {
      ss.annuli.push_back({std::pow(delta, inv_m), std::pow(big, inv_m)});
    } else {
      ss.annuli.push_back({0.0, std::pow(big, inv_m)});
    }
  }

  for (double tau : ps.y_prime) {
    Annulus const a = bounds(tau);
    ss.annuli.push_back({std::pow(a.r_in, inv_m), std::pow(a.r_out, inv_m)});
  }
  ss.merged = merge_annuli(ss.annuli);
  return ss;
}

Membership spectrum_contains(SpectrumSet const& ss, std::complex<double> z, double tol) {
  double const r = std::abs(z);
  bool boundary = false;
  for (auto const& a : ss.merged) {
    if ((r > a.r_in + tol || a.r_in == 0.0) && r < a.r_out - tol) return Membership::inside;
    if (std::abs(r - a.r_in) <= tol || std::abs(r - a.r_out) <= tol) boundary = true;
  }
  if (!ss.curve_paths.empty()) {
    std::complex<double> const w = std::pow(z, ss.m);
    double best = std::numeric_limits<double>::infinity();
    for (auto const& path : ss.curve_paths) {
      if (path.size() == 1) best = std::min(best, std::abs(w - path.front()));
      for (std::size_t i = 1; i < path.size(); ++i) best = std::min(best, segment_distance(w, path[i - 1], path[i]));
    }
    if (best <= tol) return Membership::inside;
    if (best <= std::max(tol, ss.curve_resolution)) boundary = true;
  }
  return boundary ? Membership::boundary : Membership::outside;
}

void write_spectrum_csv(std::ostream& out, SpectrumSet const& ss, int decimals) {
  if (decimals < 0 || decimals > 17) throw InvalidArgument("decimals must be between 0 and 17");
  double const half_unit = 0.5 * std::pow(10.0, -decimals);
  auto const fmt = [decimals, half_unit](double v) {
    if (std::abs(v) < half_unit) v = 0.0;
    std::ostringstream s;
    s << std::fixed << std::setprecision(decimals) << v;
    return s.str();
  };
  out << "kind,r_in|re,r_out|im\n";
  for (auto const& a : ss.merged) out << "annulus," << fmt(a.r_in) << ',' << fmt(a.r_out) << '\n';
  for (auto const& z : ss.curve) out << "curve," << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
}

}  // namespace shiftop
