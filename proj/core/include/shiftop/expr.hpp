#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "shiftop/error.hpp"

namespace shiftop::expr {

enum class Op : std::uint8_t {
  number,
  pi,
  var,
  neg,
  sin,
  cos,
  exp,
  log,
  abs,
  sqrt,
  add,
  sub,
  mul,
  div,
  pow,
};

bool is_unary(Op op);
bool is_binary(Op op);
std::string_view op_name(Op op);

class ParseError : public Error {
 public:
  ParseError(std::string const& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public Error {
 public:
  DomainError(std::string const& message, std::string node);
  std::string const& node() const { return node_; }

 private:
  std::string node_;
};

// Immutable expression tree in the single variable t.  Copies share nodes.
class Expr {
 public:
  Expr();

  static Expr number(double value);
  static Expr pi();
  static Expr var();
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const;
  double value() const;
  Expr const& operand() const;
  Expr const& lhs() const;
  Expr const& rhs() const;
  bool depends_on_t() const;
  std::size_t size() const;

  double operator()(double t) const;

  bool same_node(Expr const& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<Node const> node);
  std::shared_ptr<Node const> node_;
};

Expr parse(std::string_view text);
double eval(Expr const& e, double t);
std::string serialize(Expr const& e);
bool structurally_equal(Expr const& x, Expr const& y);

// Symbolic derivative with light constant folding.  The derivative of abs(u)
// is u' * (u / abs(u)); evaluation defines that quotient as 0 where u = 0.
Expr differentiate(Expr const& e);

// Builders that fold numeric constants and the identities 0 + x, 1 * x, etc.
namespace build {
Expr num(double value);
Expr add(Expr const& x, Expr const& y);
Expr sub(Expr const& x, Expr const& y);
Expr mul(Expr const& x, Expr const& y);
Expr div(Expr const& x, Expr const& y);
Expr neg(Expr const& x);
Expr pow(Expr const& x, Expr const& y);
Expr call(Op op, Expr const& x);
}  // namespace build

enum class ZeroKind : std::uint8_t { crossing, tangential, interval };

struct Zero {
  ZeroKind kind = ZeroKind::crossing;
  double t = 0.0;
  // Right end of an interval record; equals t for point zeros.
  double t_end = 0.0;
  // Set for tangential zeros: the sign pattern cannot confirm a true zero.
  bool suspect = false;
  // Interval record that covers the whole periodic domain.
  bool full = false;
};

struct ZeroOptions {
  int cells = 4096;
  double tol = 1e-12;
  double flat_tol = 1e-11;
  // Treat [lo, hi) as a period: the last cell wraps to lo and flat runs may
  // cross the seam, in which case t > t_end for the interval record.
  bool periodic = false;
};

using RealFunction = std::function<double(double)>;

// Zeros on the half-open interval [lo, hi), ordered by position.
std::vector<Zero> find_zeros(RealFunction const& f, double lo, double hi,
                             ZeroOptions const& options = {});
std::vector<Zero> find_zeros(Expr const& e, double lo, double hi,
                             ZeroOptions const& options = {});

std::string to_string(ZeroKind kind);

}  // namespace shiftop::expr
