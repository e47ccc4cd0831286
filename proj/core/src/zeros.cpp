#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "shiftop/expr.hpp"

namespace shiftop::expr {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisection for a sign change of g on [a, b] with g(a) having sign sa.
double bisect(RealFunction const& g, double a, double b, int sa, double tol) {
  while (b - a > tol) {
    double const mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    int const sm = sign_of(g(mid));
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

class Scanner {
 public:
  Scanner(RealFunction const& f, double lo, double hi, ZeroOptions const& options)
      : f_(f), lo_(lo), hi_(hi), opt_(options), n_(options.cells), h_((hi - lo) / options.cells) {}

  std::vector<Zero> run() {
    sample();
    find_flat_runs();
    if (full_) return zeros_;
    find_crossings();
    find_node_zeros();
    find_tangential();
    return finish();
  }

 private:
  double x(std::int64_t i) const { return lo_ + static_cast<double>(i) * h_; }

  // Node index with periodic wrap; non-periodic callers stay within [0, n].
  std::int64_t wrap(std::int64_t i) const {
    if (!opt_.periodic) return i;
    return ((i % n_) + n_) % n_;
  }

  bool has_node(std::int64_t i) const { return opt_.periodic || (i >= 0 && i <= n_); }

  double v(std::int64_t i) const { return values_[static_cast<std::size_t>(wrap(i))]; }
  bool flat(std::int64_t i) const { return flat_[static_cast<std::size_t>(wrap(i))]; }

  void sample() {
    std::int64_t const count = opt_.periodic ? n_ : n_ + 1;
    values_.resize(static_cast<std::size_t>(count));
    flat_.assign(static_cast<std::size_t>(count), false);
    for (std::int64_t i = 0; i < count; ++i) values_[static_cast<std::size_t>(i)] = f_(x(i));
  }

  double band_edge(double inside, double outside) const {
    auto const g = [this](double s) { return std::abs(f_(s)) - opt_.flat_tol; };
    if (inside < outside) return bisect(g, inside, outside, -1, opt_.tol);
    return bisect(g, outside, inside, +1, opt_.tol);
  }

  double reduce(double t) const {
    if (!opt_.periodic) return t;
    double const period = hi_ - lo_;
    double r = std::fmod(t - lo_, period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0;
    return lo_ + r;
  }

  void find_flat_runs() {
    if (opt_.flat_tol <= 0.0) return;
    std::int64_t const count = static_cast<std::int64_t>(values_.size());
    std::vector<bool> band(values_.size());
    std::int64_t in_band = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      band[static_cast<std::size_t>(i)] = std::abs(values_[static_cast<std::size_t>(i)]) < opt_.flat_tol;
      in_band += band[static_cast<std::size_t>(i)] ? 1 : 0;
    }
    if (in_band == count) {
      std::fill(flat_.begin(), flat_.end(), true);
      Zero z;
      z.kind = ZeroKind::interval;
      z.t = lo_;
      z.t_end = hi_;
      z.full = opt_.periodic;
      zeros_.push_back(z);
      full_ = true;
      return;
    }
    // Start scanning just after an out-of-band node so periodic runs never split.
    std::int64_t start = 0;
    if (opt_.periodic) {
      while (band[static_cast<std::size_t>(start)]) ++start;
    }
    std::int64_t i = start;
    std::int64_t const stop = start + count;
    while (i < stop) {
      if (!band[static_cast<std::size_t>(wrap_any(i, count))]) {
        ++i;
        continue;
      }
      std::int64_t j = i;
      while (j + 1 < stop && band[static_cast<std::size_t>(wrap_any(j + 1, count))]) ++j;
      if (j - i >= 2) record_run(i, j, count);
      i = j + 1;
    }
  }

  static std::int64_t wrap_any(std::int64_t i, std::int64_t count) { return ((i % count) + count) % count; }

  void record_run(std::int64_t i0, std::int64_t i1, std::int64_t count) {
    for (std::int64_t k = i0; k <= i1; ++k) flat_[static_cast<std::size_t>(wrap_any(k, count))] = true;
    double left = lo_;
    double right = hi_;
    if (opt_.periodic || i0 > 0) left = band_edge(x(i0), x(i0 - 1));
    if (opt_.periodic || i1 < n_) right = band_edge(x(i1), x(i1 + 1));
    Zero z;
    z.kind = ZeroKind::interval;
    z.t = reduce(left);
    z.t_end = opt_.periodic ? reduce(right) : right;
    zeros_.push_back(z);
  }

  void add_point(ZeroKind kind, double t, bool suspect) {
    Zero z;
    z.kind = kind;
    z.t = reduce(t);
    z.t_end = z.t;
    z.suspect = suspect;
    zeros_.push_back(z);
  }

  void find_crossings() {
    for (std::int64_t i = 0; i < n_; ++i) {
      if (flat(i) || flat(i + 1)) continue;
      double const va = v(i);
      double const vb = v(i + 1);
      if (va == 0.0 || vb == 0.0) continue;
      if (sign_of(va) == sign_of(vb)) continue;
      add_point(ZeroKind::crossing, bisect(f_, x(i), x(i + 1), sign_of(va), opt_.tol), false);
    }
  }

  void find_node_zeros() {
    for (std::int64_t i = 0; i < n_; ++i) {
      if (flat(i) || v(i) != 0.0) continue;
      bool const has_left = has_node(i - 1);
      bool const has_right = has_node(i + 1);
      if (has_left && has_right) {
        int const sl = sign_of(v(i - 1));
        int const sr = sign_of(v(i + 1));
        if (sl != 0 && sl == sr) {
          add_point(ZeroKind::tangential, x(i), false);
          continue;
        }
      }
      add_point(ZeroKind::crossing, x(i), false);
    }
    if (!opt_.periodic && v(0) != 0.0 && std::abs(v(0)) < opt_.tol && !flat(0)) {
      add_point(ZeroKind::crossing, lo_, false);
    }
  }

  void find_tangential() {
    for (std::int64_t i = 0; i < n_; ++i) {
      if (!has_node(i - 1) || !has_node(i + 1)) continue;
      if (flat(i - 1) || flat(i) || flat(i + 1)) continue;
      double const vl = v(i - 1);
      double const vc = v(i);
      double const vr = v(i + 1);
      if (vc == 0.0) continue;
      int const s = sign_of(vc);
      if (sign_of(vl) != s || sign_of(vr) != s) continue;
      if (std::abs(vc) > std::abs(vl) || std::abs(vc) > std::abs(vr)) continue;
      auto const g = [this](double s_) { return std::abs(f_(s_)); };
      auto const [where, value] =
          boost::math::tools::brent_find_minima(g, x(i - 1), x(i + 1), std::numeric_limits<double>::digits / 2);
      if (value < opt_.tol) add_point(ZeroKind::tangential, where, true);
    }
  }

  std::vector<Zero> finish() {
    std::vector<Zero> out;
    double const merge = 10.0 * opt_.tol;
    for (auto& z : zeros_) {
      if (z.kind != ZeroKind::interval) {
        if (opt_.periodic && hi_ - z.t <= opt_.tol) z.t = z.t_end = lo_;
        if (!opt_.periodic && hi_ - z.t <= opt_.tol) continue;
      }
      out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](Zero const& a, Zero const& b) { return a.t < b.t; });
    collapse_noise_pairs(out);
    std::vector<Zero> unique;
    for (auto const& z : out) {
      if (z.kind != ZeroKind::interval && inside_interval(z.t, out)) continue;
      if (!unique.empty() && z.kind != ZeroKind::interval && unique.back().kind != ZeroKind::interval &&
          std::abs(z.t - unique.back().t) <= merge) {
        // Prefer a confirmed record over a suspect one at the same place.
        if (unique.back().suspect && !z.suspect) unique.back() = z;
        continue;
      }
      unique.push_back(z);
    }
    if (opt_.periodic && unique.size() > 1) {
      Zero const& first = unique.front();
      Zero const& last = unique.back();
      if (first.kind != ZeroKind::interval && last.kind != ZeroKind::interval &&
          (hi_ - last.t) + (first.t - lo_) <= merge) {
        unique.pop_back();
      }
    }
    return unique;
  }

  // Two sign changes inside one cell with |f| below tol between them are
  // rounding noise around a double zero.
  void collapse_noise_pairs(std::vector<Zero>& zs) const {
    std::vector<Zero> kept;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      Zero const& z = zs[i];
      if (i + 1 < zs.size() && z.kind == ZeroKind::crossing && zs[i + 1].kind == ZeroKind::crossing &&
          zs[i + 1].t - z.t < h_) {
        double const mid = 0.5 * (z.t + zs[i + 1].t);
        if (std::abs(f_(mid)) < opt_.tol) {
          Zero merged = z;
          merged.kind = ZeroKind::tangential;
          merged.t = merged.t_end = mid;
          merged.suspect = true;
          kept.push_back(merged);
          ++i;
          continue;
        }
      }
      kept.push_back(z);
    }
    zs = std::move(kept);
  }

  bool inside_interval(double t, std::vector<Zero> const& all) const {
    for (auto const& z : all) {
      if (z.kind != ZeroKind::interval) continue;
      if (z.full) return true;
      if (z.t <= z.t_end) {
        if (t >= z.t - opt_.tol && t <= z.t_end + opt_.tol) return true;
      } else if (t >= z.t - opt_.tol || t <= z.t_end + opt_.tol) {
        return true;
      }
    }
    return false;
  }

  RealFunction const& f_;
  double lo_;
  double hi_;
  ZeroOptions opt_;
  std::int64_t n_;
  double h_;
  std::vector<double> values_;
  std::vector<bool> flat_;
  std::vector<Zero> zeros_;
  bool full_ = false;
};

}  // namespace

std::vector<Zero> find_zeros(RealFunction const& f, double lo, double hi, ZeroOptions const& options) {
  if (!(lo < hi)) throw InvalidArgument("find_zeros requires lo < hi");
  if (options.cells < 4) throw InvalidArgument("find_zeros requires at least 4 cells");
  if (!(options.tol > 0.0)) throw InvalidArgument("find_zeros requires a positive tolerance");
  return Scanner(f, lo, hi, options).run();
}

std::vector<Zero> find_zeros(Expr const& e, double lo, double hi, ZeroOptions const& options) {
  RealFunction const f = [&e](double t) { return eval(e, t); };
  return find_zeros(f, lo, hi, options);
}

std::string to_string(ZeroKind kind) {
  switch (kind) {
    case ZeroKind::crossing: return "crossing";
    case ZeroKind::tangential: return "tangential";
    case ZeroKind::interval: return "interval";
  }
  return "unknown";
}

}  // namespace shiftop::expr
