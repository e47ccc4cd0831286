#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace shiftop::cli {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double const rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

namespace {

Json numbers(std::vector<double> const& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

Json arcs(std::vector<Arc> const& list) {
  Json out = Json::array();
  for (auto const& arc : list) out.push_back(to_json(arc));
  return out;
}

std::string orientation_name(Orientation o) { return o == Orientation::preserving ? "preserving" : "reversing"; }

Json limits_json(EtaLimits const& l) {
  Json out;
  out["tau_minus"] = number(l.tau_minus);
  out["tau_plus"] = number(l.tau_plus);
  out["eta0_minus"] = number(l.eta0_minus);
  out["eta0_plus"] = number(l.eta0_plus);
  out["eta1_minus"] = number(l.eta1_minus);
  out["eta1_plus"] = number(l.eta1_plus);
  return out;
}

Json condition_json(ConditionResult const& c) {
  Json out;
  out["holds"] = to_string(c.holds);
  if (c.witness) {
    out["witness"] = {{"p", number(c.witness->p)}, {"q", number(c.witness->q)}, {"n", c.witness->n}};
  } else {
    out["witness"] = nullptr;
  }
  out["zeros_a"] = c.zeros_a;
  out["zeros_b"] = c.zeros_b;
  out["suspect"] = numbers(c.suspect);
  return out;
}

}  // namespace

Json to_json(Arc const& arc) {
  Json out;
  out["start"] = number(arc.start);
  out["end"] = number(arc.end);
  out["kind"] = arc.kind == ArcKind::open ? "open" : "closed";
  out["full"] = arc.full;
  return out;
}

Json to_json(PeriodicStructure const& ps, Shift const& s) {
  Json out;
  out["shift"] = s.describe();
  out["m"] = ps.m;
  out["orientation"] = orientation_name(ps.orientation);
  out["winding"] = ps.winding;
  out["lambda_points"] = numbers(ps.lambda_points);
  out["lambda_arcs"] = arcs(ps.lambda_arcs);
  out["y"] = numbers(ps.y);
  out["y_prime"] = numbers(ps.y_prime);
  out["omega"] = arcs(ps.omega);
  Json gamma = Json::array();
  for (auto const& g : ps.gamma) {
    Json item;
    item["arc"] = to_json(g.arc);
    item["tau_minus"] = number(g.repelling);
    item["tau_plus"] = number(g.attracting);
    item["forward_positive"] = g.forward_positive;
    gamma.push_back(std::move(item));
  }
  out["gamma"] = std::move(gamma);
  out["uncertain"] = ps.uncertain;
  out["suspect_points"] = numbers(ps.suspect_points);
  return out;
}

Json to_json(InvertibilityReport const& report) {
  Json out;
  out["verdict"] = to_string(report.verdict);
  out["right"] = to_string(report.right);
  out["left"] = to_string(report.left);

  Json partition;
  partition["carleman"] = arcs(report.partition.carleman);
  Json arc_list = Json::array();
  for (auto const& a : report.partition.arcs) {
    Json item;
    item["gamma_index"] = a.gamma_index;
    item["arc"] = to_json(a.arc);
    item["region"] = region_label(a.region);
    item["limits"] = limits_json(a.limits);
    arc_list.push_back(std::move(item));
  }
  partition["arcs"] = std::move(arc_list);
  Json point_list = Json::array();
  for (auto const& p : report.partition.points) {
    Json item;
    item["t"] = number(p.t);
    item["region"] = region_label(p.region);
    item["eta0"] = number(p.eta.eta0);
    item["eta1"] = number(p.eta.eta1);
    item["declared_limit"] = p.declared_limit;
    point_list.push_back(std::move(item));
  }
  partition["points"] = std::move(point_list);
  out["partition"] = std::move(partition);

  Json zeros = Json::array();
  for (auto const& z : report.sigma_zeros) {
    Json item;
    item["t"] = number(z.t);
    item["t_end"] = number(z.t_end);
    item["region"] = region_label(z.region);
    item["kind"] = expr::to_string(z.kind);
    item["suspect"] = z.suspect;
    zeros.push_back(std::move(item));
  }
  out["sigma_zeros"] = std::move(zeros);

  Json extrema = Json::array();
  for (auto const& e : report.extrema) {
    Json item;
    item["region"] = region_label(e.region);
    item["min"] = number(e.min);
    item["max"] = number(e.max);
    item["min_abs"] = number(e.min_abs);
    item["samples"] = e.samples;
    extrema.push_back(std::move(item));
  }
  out["sigma_extrema"] = std::move(extrema);

  out["conditions"] = {{"R", condition_json(report.r_condition)}, {"L", condition_json(report.l_condition)}};
  out["degenerate"] = numbers(report.degenerate);

  if (report.witness) {
    Json w;
    w["kind"] = report.witness->kind;
    w["t"] = number(report.witness->t);
    w["region"] = region_label(report.witness->region);
    if (report.witness->orbit) {
      w["orbit"] = {{"p", number(report.witness->orbit->p)},
                    {"q", number(report.witness->orbit->q)},
                    {"n", report.witness->orbit->n}};
    } else {
      w["orbit"] = nullptr;
    }
    w["detail"] = report.witness->detail;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["warnings"] = report.warnings;
  return out;
}

Json to_json(EvidenceRecord const& record) {
  Json out;
  out["label"] = "EVIDENCE";
  out["p"] = number(record.p);
  out["expected"] = to_string(record.expected);
  Json rungs = Json::array();
  for (auto const& r : record.rungs) {
    Json item;
    item["n"] = r.n;
    item["smin"] = number(r.smin);
    item["direct"] = number(r.direct);
    item["inverse_form"] = number(r.inverse_form);
    item["adjoint_smin"] = number(r.adjoint_smin);
    item["adjoint_direct"] = number(r.adjoint_direct);
    item["adjoint_inverse_form"] = number(r.adjoint_inverse_form);
    rungs.push_back(std::move(item));
  }
  out["rungs"] = std::move(rungs);
  out["floor"] = number(record.floor);
  out["trend"] = to_string(record.trend);
  out["adjoint_trend"] = to_string(record.adjoint_trend);
  out["residual"] = number(record.residual);
  out["adjoint_residual"] = number(record.adjoint_residual);
  out["consistent"] = record.consistent;
  out["note"] = record.note;
  return out;
}

std::string dump(Json const& doc) { return doc.dump(2) + "\n"; }

}  // namespace shiftop::cli
