#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftop/analysis.hpp"
#include "shiftop/circle.hpp"
#include "shiftop/indices.hpp"

namespace shiftop::cli {

// Raised for malformed or invalid configuration; path is a JSON pointer.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, std::string const& message);
  std::string const& path() const { return path_; }

 private:
  std::string path_;
};

struct OracleConfig {
  std::vector<int> grids{256, 512, 1024};
  double p = 2.0;
  std::uint64_t seed = 0x5EED;
};

struct Config {
  std::string lift;
  OrientationHint orientation = OrientationHint::automatic;
  std::string a;
  std::string b;
  double alpha = 0.5;
  double beta = 0.5;
  bool fundamental_type = true;
  Tolerances tolerances;
  OracleConfig oracle;
};

Config parse_config(nlohmann::json const& doc);
Config load_config(std::string const& path);

// Builds the operator, mapping invalid pieces back to their JSON path.
OperatorSpec build_operator(Config const& cfg);

}  // namespace shiftop::cli
