#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "shiftop/expr.hpp"

namespace shiftop::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string path, std::string const& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

namespace {

void reject_unknown(json const& obj, std::string const& path, std::set<std::string> const& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(path + "/" + it.key(), "unknown key");
  }
}

json const& require_object(json const& parent, std::string const& key, std::string const& path) {
  if (!parent.contains(key)) throw ConfigError(path + "/" + key, "missing required object");
  json const& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path + "/" + key, "expected an object");
  return v;
}

std::string read_string(json const& parent, std::string const& key, std::string const& path) {
  if (!parent.contains(key)) throw ConfigError(path + "/" + key, "missing required string");
  json const& v = parent.at(key);
  if (!v.is_string()) throw ConfigError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

double read_real(json const& parent, std::string const& key, std::string const& path, double fallback) {
  if (!parent.contains(key)) return fallback;
  json const& v = parent.at(key);
  if (!v.is_number()) throw ConfigError(path + "/" + key, "expected a number");
  return v.get<double>();
}

void check_expression(std::string const& text, std::string const& path) {
  try {
    expr::parse(text);
  } catch (expr::ParseError const& e) {
    throw ConfigError(path, e.what());
  } catch (InvalidArgument const& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

Config parse_config(json const& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(doc, "", {"shift", "a", "b", "space", "tolerances", "oracle"});
  Config cfg;

  json const& shift = require_object(doc, "shift", "");
  reject_unknown(shift, "/shift", {"lift", "orientation"});
  cfg.lift = read_string(shift, "lift", "/shift");
  check_expression(cfg.lift, "/shift/lift");
  if (shift.contains("orientation")) {
    std::string const o = read_string(shift, "orientation", "/shift");
    if (o == "auto") {
      cfg.orientation = OrientationHint::automatic;
    } else if (o == "preserve") {
      cfg.orientation = OrientationHint::preserve;
    } else if (o == "reverse") {
      cfg.orientation = OrientationHint::reverse;
    } else {
      throw ConfigError("/shift/orientation", "expected one of \"auto\", \"preserve\", \"reverse\"");
    }
  }

  cfg.a = read_string(doc, "a", "");
  check_expression(cfg.a, "/a");
  cfg.b = read_string(doc, "b", "");
  check_expression(cfg.b, "/b");

  if (doc.contains("space")) {
    json const& space = require_object(doc, "space", "");
    reject_unknown(space, "/space", {"alpha", "beta", "fundamental_type"});
    cfg.alpha = read_real(space, "alpha", "/space", cfg.alpha);
    cfg.beta = read_real(space, "beta", "/space", cfg.beta);
    if (space.contains("fundamental_type")) {
      if (!space.at("fundamental_type").is_boolean()) {
        throw ConfigError("/space/fundamental_type", "expected a boolean");
      }
      cfg.fundamental_type = space.at("fundamental_type").get<bool>();
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("/space/alpha", "must lie in (0, 1)");
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) throw ConfigError("/space/beta", "must lie in (0, 1)");
    if (cfg.alpha > cfg.beta) throw ConfigError("/space/beta", "must not be smaller than alpha");
  }

  if (doc.contains("tolerances")) {
    json const& tol = require_object(doc, "tolerances", "");
    reject_unknown(tol, "/tolerances", {"zero", "band", "flat"});
    cfg.tolerances.zero = read_real(tol, "zero", "/tolerances", cfg.tolerances.zero);
    cfg.tolerances.band = read_real(tol, "band", "/tolerances", cfg.tolerances.band);
    cfg.tolerances.flat = read_real(tol, "flat", "/tolerances", cfg.tolerances.flat);
    for (auto const& [key, value] : {std::pair{"zero", cfg.tolerances.zero}, std::pair{"band", cfg.tolerances.band},
                                     std::pair{"flat", cfg.tolerances.flat}}) {
      if (!(value > 0.0)) throw ConfigError(std::string("/tolerances/") + key, "must be positive");
    }
  }

  if (doc.contains("oracle")) {
    json const& oracle = require_object(doc, "oracle", "");
    reject_unknown(oracle, "/oracle", {"grids", "p", "seed"});
    if (oracle.contains("grids")) {
      json const& grids = oracle.at("grids");
      if (!grids.is_array()) throw ConfigError("/oracle/grids", "expected an array of integers");
      cfg.oracle.grids.clear();
      for (std::size_t i = 0; i < grids.size(); ++i) {
        std::string const at = "/oracle/grids/" + std::to_string(i);
        if (!grids[i].is_number_integer()) throw ConfigError(at, "expected an integer");
        long long const n = grids[i].get<long long>();
        if (n < 64 || n > 8192 || (n & (n - 1)) != 0) {
          throw ConfigError(at, "grid size must be a power of two in [64, 8192]");
        }
        cfg.oracle.grids.push_back(static_cast<int>(n));
      }
      if (cfg.oracle.grids.size() < 3) throw ConfigError("/oracle/grids", "needs at least three grids");
      for (std::size_t i = 1; i < cfg.oracle.grids.size(); ++i) {
        if (cfg.oracle.grids[i] <= cfg.oracle.grids[i - 1]) {
          throw ConfigError("/oracle/grids/" + std::to_string(i), "grids must be strictly ascending");
        }
      }
    }
    cfg.oracle.p = read_real(oracle, "p", "/oracle", cfg.oracle.p);
    if (!(cfg.oracle.p > 1.0) || !std::isfinite(cfg.oracle.p)) throw ConfigError("/oracle/p", "must satisfy 1 < p < inf");
    if (oracle.contains("seed")) {
      json const& seed = oracle.at("seed");
      if (!seed.is_number_unsigned()) throw ConfigError("/oracle/seed", "expected a non-negative integer");
      cfg.oracle.seed = seed.get<std::uint64_t>();
    }
  }
  return cfg;
}

Config load_config(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open configuration file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (json::parse_error const& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

OperatorSpec build_operator(Config const& cfg) {
  Shift shift;
  try {
    shift = Shift(Diffeomorphism::create(expr::parse(cfg.lift), cfg.orientation));
  } catch (InvalidArgument const& e) {
    throw ConfigError("/shift/lift", e.what());
  } catch (ShiftError const& e) {
    throw ConfigError("/shift/lift", e.what());
  } catch (expr::DomainError const& e) {
    throw ConfigError("/shift/lift", e.what());
  }
  CircleFunction a(expr::parse(cfg.a));
  CircleFunction b(expr::parse(cfg.b));
  try {
    check_periodic(a, "a");
  } catch (Error const& e) {
    throw ConfigError("/a", e.what());
  }
  try {
    check_periodic(b, "b");
  } catch (Error const& e) {
    throw ConfigError("/b", e.what());
  }
  SpaceIndices space;
  try {
    space = space_indices(cfg.alpha, cfg.beta, cfg.fundamental_type);
  } catch (InvalidArgument const& e) {
    throw ConfigError("/space", e.what());
  }
  return make_operator(std::move(a), std::move(b), std::move(shift), std::move(space), cfg.tolerances);
}

}  // namespace shiftop::cli
