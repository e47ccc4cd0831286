#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shiftop/circle.hpp"
#include "shiftop/expr.hpp"
#include "shiftop/indices.hpp"

namespace shiftop {

// A real function on the circle: either a parsed expression or a derived
// quantity such as an orbit product, which has no closed expression.
class CircleFunction {
 public:
  CircleFunction();
  CircleFunction(expr::Expr e);  // NOLINT(google-explicit-constructor)
  CircleFunction(std::function<double(double)> f, std::string description);

  static CircleFunction constant(double c);

  double operator()(double t) const { return f_(t); }
  std::string const& description() const { return description_; }
  std::optional<expr::Expr> const& expression() const { return expression_; }

 private:
  std::function<double(double)> f_;
  std::string description_;
  std::optional<expr::Expr> expression_;
};

// f_m(t) = prod_{i<m} f(alpha_i(t)).
double orbit_product(CircleFunction const& f, Shift const& s, int m, double t);
CircleFunction orbit_product_function(CircleFunction const& f, Shift const& s, int m);

struct Tolerances {
  double zero = 1e-12;
  double band = 1e-10;
  double flat = 1e-11;
  int cells = 4096;
  // Orbit matching and joint-vanishing thresholds.
  double match = 1e-9;
  double vanish = 1e-9;
  int m_max = 16;

  StructureOptions structure_options() const;
  expr::ZeroOptions zero_options() const;
};

struct OperatorSpec {
  CircleFunction a;
  CircleFunction b;
  Shift shift;
  PeriodicStructure structure;
  SpaceIndices space;
};

// Validates periodicity of a and b and detects the periodic structure.
OperatorSpec make_operator(CircleFunction a, CircleFunction b, Shift shift, SpaceIndices space,
                           Tolerances const& tol = {});
OperatorSpec make_operator(CircleFunction a, CircleFunction b, Shift shift, PeriodicStructure structure,
                           SpaceIndices space);
void check_periodic(CircleFunction const& f, std::string const& name);

struct EtaValues {
  double eta0 = 0.0;
  double eta1 = 0.0;
};

struct EtaLimits {
  double eta0_minus = 0.0;
  double eta0_plus = 0.0;
  double eta1_minus = 0.0;
  double eta1_plus = 0.0;
  double tau_minus = 0.0;
  double tau_plus = 0.0;
};

EtaValues eta_values(OperatorSpec const& op, double t);
EtaLimits eta_limits(OperatorSpec const& op, double t);
// Cross-check path: eta evaluated at alpha_{+-m*steps}(t).
EtaLimits eta_limits_iterated(OperatorSpec const& op, double t, int steps = 50);

struct ArcEta {
  std::size_t gamma_index = 0;
  EtaLimits limits;
};

struct PointEta {
  double t = 0.0;
  EtaValues values;
};

struct EtaProfile {
  std::vector<ArcEta> arcs;
  std::vector<PointEta> points;
};

EtaProfile eta_profile(OperatorSpec const& op);

enum class Region : std::uint8_t {
  carleman,
  a_dominant,
  b_dominant,
  right_control,
  left_control,
  vanishing,
  degenerate,
};

// Short labels G1..G5 for the five sets, "none" where sigma_A vanishes with
// strict signs, and "degenerate" inside the tolerance band.
std::string region_label(Region r);

Region classify_limits(EtaLimits const& limits, double band);

struct ArcClass {
  std::size_t gamma_index = 0;
  Arc arc;
  Region region = Region::degenerate;
  EtaLimits limits;
};

struct PointClass {
  double t = 0.0;
  Region region = Region::degenerate;
  EtaValues eta;
  bool declared_limit = false;
};

struct GammaPartition {
  std::vector<Arc> carleman;
  std::vector<ArcClass> arcs;
  std::vector<PointClass> points;

  Region classify(double t, double tol = 1e-9) const;
  std::vector<double> degenerate_locations() const;
  bool has(Region r) const;
};

GammaPartition build_partition(OperatorSpec const& op, Tolerances const& tol = {});

double sigma_A(OperatorSpec const& op, GammaPartition const& partition, double t);

enum class Truth : std::uint8_t { no, yes, unknown };
std::string to_string(Truth t);
Truth truth_and(Truth x, Truth y);

struct OrbitWitness {
  double p = 0.0;
  double q = 0.0;
  std::int64_t n = 0;
};

struct ConditionResult {
  Truth holds = Truth::yes;
  std::optional<OrbitWitness> witness;
  std::vector<double> suspect;
  std::size_t zeros_a = 0;
  std::size_t zeros_b = 0;
};

// Zero-pattern conditions on the right and left control regions.
ConditionResult check_R(OperatorSpec const& op, GammaPartition const& partition, Tolerances const& tol = {});
ConditionResult check_L(OperatorSpec const& op, GammaPartition const& partition, Tolerances const& tol = {});

enum class Verdict : std::uint8_t { two_sided, right_only, left_only, neither, undecidable };
std::string to_string(Verdict v);

struct SigmaZero {
  double t = 0.0;
  double t_end = 0.0;
  Region region = Region::degenerate;
  expr::ZeroKind kind = expr::ZeroKind::crossing;
  bool suspect = false;
};

struct RegionExtrema {
  Region region = Region::degenerate;
  double min = 0.0;
  double max = 0.0;
  double min_abs = 0.0;
  std::size_t samples = 0;
};

struct Witness {
  std::string kind;
  double t = 0.0;
  Region region = Region::degenerate;
  std::optional<OrbitWitness> orbit;
  std::string detail;
};

struct InvertibilityReport {
  Verdict verdict = Verdict::undecidable;
  Truth right = Truth::unknown;
  Truth left = Truth::unknown;
  GammaPartition partition;
  std::vector<SigmaZero> sigma_zeros;
  std::vector<RegionExtrema> extrema;
  ConditionResult r_condition;
  ConditionResult l_condition;
  std::vector<double> degenerate;
  std::optional<Witness> witness;
  std::vector<std::string> warnings;
};

InvertibilityReport decide(OperatorSpec const& op, Tolerances const& tol = {});

OperatorSpec adjoint_spec(OperatorSpec const& op, Tolerances const& tol = {});

struct ReductionWitness {
  double t = 0.0;
  int i = 0;
};

struct Reduction {
  OperatorSpec op_m;
  bool cond = true;
  std::optional<ReductionWitness> witness;
};

Reduction reduce_to_fixed(OperatorSpec const& op, Tolerances const& tol = {});

}  // namespace shiftop
