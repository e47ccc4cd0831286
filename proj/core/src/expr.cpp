#include "shiftop/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

namespace shiftop::expr {

struct Expr::Node {
  Op op = Op::number;
  double value = 0.0;
  Expr lhs{std::shared_ptr<Node const>()};
  Expr rhs{std::shared_ptr<Node const>()};
  bool has_t = false;
  std::size_t size = 1;
};

namespace {

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr std::array<FunctionName, 6> kFunctions{{
    {"sin", Op::sin},
    {"cos", Op::cos},
    {"exp", Op::exp},
    {"log", Op::log},
    {"abs", Op::abs},
    {"sqrt", Op::sqrt},
}};

}  // namespace

bool is_unary(Op op) {
  switch (op) {
    case Op::neg:
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::log:
    case Op::abs:
    case Op::sqrt:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow:
      return true;
    default:
      return false;
  }
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::number: return "number";
    case Op::pi: return "pi";
    case Op::var: return "t";
    case Op::neg: return "-";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::abs: return "abs";
    case Op::sqrt: return "sqrt";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::pow: return "^";
  }
  return "?";
}

ParseError::ParseError(std::string const& message, std::size_t offset)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

DomainError::DomainError(std::string const& message, std::string node)
    : Error(message + " in " + node), node_(std::move(node)) {}

Expr::Expr() : Expr(number(0.0)) {}

Expr::Expr(std::shared_ptr<Node const> node) : node_(std::move(node)) {}

Expr Expr::number(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw InvalidArgument("numeric literal must be finite and non-negative");
  }
  auto node = std::make_shared<Node>();
  node->op = Op::number;
  node->value = value;
  return Expr(std::move(node));
}

Expr Expr::pi() {
  auto node = std::make_shared<Node>();
  node->op = Op::pi;
  node->value = std::numbers::pi;
  return Expr(std::move(node));
}

Expr Expr::var() {
  auto node = std::make_shared<Node>();
  node->op = Op::var;
  node->has_t = true;
  return Expr(std::move(node));
}

Expr Expr::unary(Op op, Expr operand) {
  if (!is_unary(op)) throw InvalidArgument("not a unary operator");
  auto node = std::make_shared<Node>();
  node->op = op;
  node->has_t = operand.depends_on_t();
  node->size = 1 + operand.size();
  node->lhs = std::move(operand);
  return Expr(std::move(node));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw InvalidArgument("not a binary operator");
  if (op == Op::pow && rhs.depends_on_t()) {
    throw InvalidArgument("exponent must not depend on t");
  }
  auto node = std::make_shared<Node>();
  node->op = op;
  node->has_t = lhs.depends_on_t() || rhs.depends_on_t();
  node->size = 1 + lhs.size() + rhs.size();
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return Expr(std::move(node));
}

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
Expr const& Expr::operand() const { return node_->lhs; }
Expr const& Expr::lhs() const { return node_->lhs; }
Expr const& Expr::rhs() const { return node_->rhs; }
bool Expr::depends_on_t() const { return node_->has_t; }
std::size_t Expr::size() const { return node_->size; }

double Expr::operator()(double t) const { return eval(*this, t); }

// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_sum();
    skip_space();
    if (pos_ < text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Op::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = Expr::binary(Op::sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Op::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Op::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::unary(Op::neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) {
      skip_space();
      std::size_t const at = pos_;
      Expr exponent = parse_unary();
      if (exponent.depends_on_t()) {
        throw ParseError("exponent must not depend on t", at);
      }
      return Expr::binary(Op::pow, base, exponent);
    }
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char const c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_alpha(c)) return parse_identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Expr parse_number() {
    std::size_t const start = pos_;
    std::size_t end = pos_;
    bool digits = false;
    while (end < text_.size() && is_digit(text_[end])) {
      ++end;
      digits = true;
    }
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) {
        ++end;
        digits = true;
      }
    }
    if (!digits) throw ParseError("malformed number", start);
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < text_.size() && (text_[exp_end] == '+' || text_[exp_end] == '-')) ++exp_end;
      if (exp_end >= text_.size() || !is_digit(text_[exp_end])) {
        throw ParseError("malformed exponent", end);
      }
      while (exp_end < text_.size() && is_digit(text_[exp_end])) ++exp_end;
      end = exp_end;
    }
    double value = 0.0;
    // from_chars rejects a leading '.', so give it a zero to chew on.
    std::string token(text_.substr(start, end - start));
    if (token.front() == '.') token.insert(token.begin(), '0');
    auto const [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw ParseError("number out of range", start);
    }
    pos_ = end;
    return Expr::number(value);
  }

  Expr parse_identifier() {
    std::size_t const start = pos_;
    while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
    std::string_view const name = text_.substr(start, pos_ - start);
    if (name == "t") return Expr::var();
    if (name == "pi") return Expr::pi();
    for (auto const& fn : kFunctions) {
      if (fn.name != name) continue;
      if (!accept('(')) throw ParseError("expected '(' after function '" + std::string(name) + "'", pos_);
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        throw ParseError("function '" + std::string(name) + "' takes 1 argument, got 0", pos_);
      }
      Expr arg = parse_sum();
      if (accept(',')) {
        std::size_t count = 2;
        parse_sum();
        while (accept(',')) {
          parse_sum();
          ++count;
        }
        throw ParseError("function '" + std::string(name) + "' takes 1 argument, got " +
                             std::to_string(count),
                         start);
      }
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return Expr::unary(fn.op, arg);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  auto const [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void serialize_into(Expr const& e, std::string& out) {
  switch (e.op()) {
    case Op::number:
      out += format_number(e.value());
      return;
    case Op::pi:
      out += "pi";
      return;
    case Op::var:
      out += "t";
      return;
    case Op::neg:
      out += "(-";
      serialize_into(e.operand(), out);
      out += ")";
      return;
    case Op::sin:
    case Op::cos:
    case Op::exp:
    case Op::log:
    case Op::abs:
    case Op::sqrt:
      out += op_name(e.op());
      out += "(";
      serialize_into(e.operand(), out);
      out += ")";
      return;
    default:
      out += "(";
      serialize_into(e.lhs(), out);
      out += " ";
      out += op_name(e.op());
      out += " ";
      serialize_into(e.rhs(), out);
      out += ")";
      return;
  }
}

[[noreturn]] void domain_failure(std::string const& what, Expr const& e) {
  throw DomainError(what, serialize(e));
}

double checked(double value, Expr const& e) {
  if (!std::isfinite(value)) domain_failure("non-finite result", e);
  return value;
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string serialize(Expr const& e) {
  std::string out;
  serialize_into(e, out);
  return out;
}

bool structurally_equal(Expr const& x, Expr const& y) {
  if (x.same_node(y)) return true;
  if (x.op() != y.op()) return false;
  switch (x.op()) {
    case Op::number:
      return x.value() == y.value();
    case Op::pi:
    case Op::var:
      return true;
    default:
      break;
  }
  if (is_unary(x.op())) return structurally_equal(x.operand(), y.operand());
  return structurally_equal(x.lhs(), y.lhs()) && structurally_equal(x.rhs(), y.rhs());
}

double eval(Expr const& e, double t) {
  switch (e.op()) {
    case Op::number:
    case Op::pi:
      return e.value();
    case Op::var:
      return t;
    case Op::neg:
      return -eval(e.operand(), t);
    case Op::sin:
      return std::sin(eval(e.operand(), t));
    case Op::cos:
      return std::cos(eval(e.operand(), t));
    case Op::exp:
      return checked(std::exp(eval(e.operand(), t)), e);
    case Op::log: {
      double const x = eval(e.operand(), t);
      if (!(x > 0.0)) domain_failure("log of non-positive value", e);
      return std::log(x);
    }
    case Op::abs:
      return std::abs(eval(e.operand(), t));
    case Op::sqrt: {
      double const x = eval(e.operand(), t);
      if (x < 0.0) domain_failure("sqrt of negative value", e);
      return std::sqrt(x);
    }
    case Op::add:
      return checked(eval(e.lhs(), t) + eval(e.rhs(), t), e);
    case Op::sub:
      return checked(eval(e.lhs(), t) - eval(e.rhs(), t), e);
    case Op::mul:
      return checked(eval(e.lhs(), t) * eval(e.rhs(), t), e);
    case Op::div: {
      double const num = eval(e.lhs(), t);
      double const den = eval(e.rhs(), t);
      if (den == 0.0) {
        if (num == 0.0 && e.rhs().op() == Op::abs && structurally_equal(e.rhs().operand(), e.lhs())) {
          return 0.0;
        }
        domain_failure("division by zero", e);
      }
      return checked(num / den, e);
    }
    case Op::pow: {
      double const base = eval(e.lhs(), t);
      double const exponent = eval(e.rhs(), t);
      double const r = std::pow(base, exponent);
      if (std::isnan(r)) domain_failure("power of negative base", e);
      if (std::isinf(r)) domain_failure(base == 0.0 ? "division by zero" : "non-finite result", e);
      return r;
    }
  }
  return 0.0;
}

// Builders

namespace build {

namespace {

bool is_const(Expr const& e, double& value) {
  if (e.op() == Op::number) {
    value = e.value();
    return true;
  }
  if (e.op() == Op::neg && e.operand().op() == Op::number) {
    value = -e.operand().value();
    return true;
  }
  return false;
}

bool is_value(Expr const& e, double target) {
  double v = 0.0;
  return is_const(e, v) && v == target;
}

}  // namespace

Expr num(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("numeric constant must be finite");
  if (value < 0.0 || (value == 0.0 && std::signbit(value))) {
    return Expr::unary(Op::neg, Expr::number(-value));
  }
  return Expr::number(value);
}

Expr add(Expr const& x, Expr const& y) {
  double a = 0.0, b = 0.0;
  if (is_const(x, a) && is_const(y, b) && std::isfinite(a + b)) return num(a + b);
  if (is_value(x, 0.0)) return y;
  if (is_value(y, 0.0)) return x;
  return Expr::binary(Op::add, x, y);
}

Expr sub(Expr const& x, Expr const& y) {
  double a = 0.0, b = 0.0;
  if (is_const(x, a) && is_const(y, b) && std::isfinite(a - b)) return num(a - b);
  if (is_value(y, 0.0)) return x;
  if (is_value(x, 0.0)) return neg(y);
  return Expr::binary(Op::sub, x, y);
}

Expr mul(Expr const& x, Expr const& y) {
  double a = 0.0, b = 0.0;
  if (is_const(x, a) && is_const(y, b) && std::isfinite(a * b)) return num(a * b);
  if (is_value(x, 0.0) || is_value(y, 0.0)) return num(0.0);
  if (is_value(x, 1.0)) return y;
  if (is_value(y, 1.0)) return x;
  return Expr::binary(Op::mul, x, y);
}

Expr div(Expr const& x, Expr const& y) {
  double a = 0.0, b = 0.0;
  if (is_const(x, a) && is_const(y, b) && b != 0.0 && std::isfinite(a / b)) return num(a / b);
  if (is_value(y, 1.0)) return x;
  if (is_value(x, 0.0) && !is_value(y, 0.0)) return num(0.0);
  return Expr::binary(Op::div, x, y);
}

Expr neg(Expr const& x) {
  double a = 0.0;
  if (is_const(x, a)) return num(-a);
  if (x.op() == Op::neg) return x.operand();
  return Expr::unary(Op::neg, x);
}

Expr pow(Expr const& x, Expr const& y) {
  if (is_value(y, 1.0)) return x;
  if (is_value(y, 0.0)) return num(1.0);
  return Expr::binary(Op::pow, x, y);
}

Expr call(Op op, Expr const& x) { return Expr::unary(op, x); }

}  // namespace build

Expr differentiate(Expr const& e) {
  using namespace build;
  if (!e.depends_on_t()) return num(0.0);
  switch (e.op()) {
    case Op::var:
      return num(1.0);
    case Op::neg:
      return neg(differentiate(e.operand()));
    case Op::sin:
      return mul(call(Op::cos, e.operand()), differentiate(e.operand()));
    case Op::cos:
      return neg(mul(call(Op::sin, e.operand()), differentiate(e.operand())));
    case Op::exp:
      return mul(e, differentiate(e.operand()));
    case Op::log:
      return div(differentiate(e.operand()), e.operand());
    case Op::abs:
      return mul(differentiate(e.operand()), div(e.operand(), e));
    case Op::sqrt:
      return div(differentiate(e.operand()), mul(num(2.0), e));
    case Op::add:
      return add(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::sub:
      return sub(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::mul:
      return add(mul(differentiate(e.lhs()), e.rhs()), mul(e.lhs(), differentiate(e.rhs())));
    case Op::div:
      if (!e.rhs().depends_on_t()) return div(differentiate(e.lhs()), e.rhs());
      return div(sub(mul(differentiate(e.lhs()), e.rhs()), mul(e.lhs(), differentiate(e.rhs()))),
                 pow(e.rhs(), num(2.0)));
    case Op::pow:
      return mul(mul(e.rhs(), pow(e.lhs(), sub(e.rhs(), num(1.0)))), differentiate(e.lhs()));
    default:
      return num(0.0);
  }
}

}  // namespace shiftop::expr
