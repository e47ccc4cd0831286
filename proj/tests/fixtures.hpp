#pragma once

#include <string>
#include <vector>

#include "shiftop/analysis.hpp"

namespace shiftop::fixtures {

inline constexpr char const* kS1 = "t + 0.1*sin(2*pi*t)";

struct Fixture {
  std::string name;
  std::string lift;
  std::string a;
  std::string b;
  Verdict expected;
};

inline std::vector<Fixture> const& suite() {
  static std::vector<Fixture> const all{
      {"F1", kS1, "2", "1", Verdict::two_sided},
      {"F2", kS1, "0.1", "1", Verdict::two_sided},
      {"F4", kS1, "2 - 1.9*sin(pi*t)", "1", Verdict::right_only},
      {"F5", kS1, "1", "2 - 1.9*sin(pi*t)", Verdict::left_only},
      {"F6", kS1, "(2 - 1.9*sin(pi*t))*cos(2*pi*t)", "cos(2*pi*t)", Verdict::neither},
      {"F7", "1 - t", "sin(2*pi*t) + 0.5", "0.5", Verdict::neither},
      {"F8", "t", "1 + cos(2*pi*t)", "0.5", Verdict::neither},
      {"F9", "t + 0.5", "2", "1", Verdict::two_sided},
  };
  return all;
}

inline SpaceIndices default_space() { return space_indices(1.0 / 3.0, 0.5, true); }

inline OperatorSpec build(std::string const& lift, std::string const& a, std::string const& b,
                          SpaceIndices const& space = default_space()) {
  return make_operator(CircleFunction(expr::parse(a)), CircleFunction(expr::parse(b)), Shift::from_lift(lift), space);
}

inline OperatorSpec build(Fixture const& f) { return build(f.lift, f.a, f.b); }

}  // namespace shiftop::fixtures
