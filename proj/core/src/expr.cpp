#include "ahgeom/expr.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "ahgeom/errors.hpp"

namespace ahg {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::size_t index = 0;
  std::string name;
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  Expr a{std::shared_ptr<const Node>{}};
  Expr b{std::shared_ptr<const Node>{}};
  bool constant = true;
  std::size_t count = 1;
};

namespace {

double apply_unary(UnaryOp op, double x) {
  switch (op) {
    case UnaryOp::Neg: return -x;
    case UnaryOp::Sin: return std::sin(x);
    case UnaryOp::Cos: return std::cos(x);
    case UnaryOp::Tan: return std::tan(x);
    case UnaryOp::Exp: return std::exp(x);
    case UnaryOp::Log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value " + format_number(x));
      return std::log(x);
    case UnaryOp::Sinh: return std::sinh(x);
    case UnaryOp::Cosh: return std::cosh(x);
    case UnaryOp::Tanh: return std::tanh(x);
    case UnaryOp::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative value " + format_number(x));
      return std::sqrt(x);
  }
  return 0.0;
}

double apply_binary(BinaryOp op, double x, double y) {
  switch (op) {
    case BinaryOp::Add: return x + y;
    case BinaryOp::Sub: return x - y;
    case BinaryOp::Mul: return x * y;
    case BinaryOp::Div:
      if (y == 0.0) throw DomainError("division by zero");
      return x / y;
    case BinaryOp::Pow: {
      if (x == 0.0 && y < 0.0) throw DomainError("zero raised to a negative power");
      const double r = std::pow(x, y);
      if (std::isnan(r)) {
        throw DomainError("negative base " + format_number(x) + " with non-integer exponent " +
                          format_number(y));
      }
      return r;
    }
  }
  return 0.0;
}

// Folding helper: evaluates a constant subtree, returning false when the
// value is undefined so the caller keeps the symbolic node.
bool try_fold(const std::function<double()>& f, double& out) {
  try {
    out = f();
  } catch (const DomainError&) {
    return false;
  }
  return std::isfinite(out);
}

}  // namespace

std::string_view to_string(UnaryOp op) noexcept {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tan: return "tan";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sinh: return "sinh";
    case UnaryOp::Cosh: return "cosh";
    case UnaryOp::Tanh: return "tanh";
    case UnaryOp::Sqrt: return "sqrt";
  }
  return "?";
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::shared_ptr<Node>(new Node);
    n->kind = Kind::Constant;
    n->value = 0.0;
    return std::shared_ptr<const Node>(n);
  }();
  node_ = zero;
}

Expr Expr::constant(double value) {
  auto n = std::shared_ptr<Node>(new Node);
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::symbol(std::size_t index, std::string name) {
  auto n = std::shared_ptr<Node>(new Node);
  n->kind = Kind::Symbol;
  n->index = index;
  n->name = std::move(name);
  n->constant = false;
  return Expr(std::move(n));
}

Expr Expr::make_unary(UnaryOp op, Expr arg) {
  auto n = std::shared_ptr<Node>(new Node);
  n->kind = Kind::Unary;
  n->uop = op;
  n->constant = arg.is_constant();
  n->count = 1 + arg.node_count();
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::make_binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = std::shared_ptr<Node>(new Node);
  n->kind = Kind::Binary;
  n->bop = op;
  n->constant = lhs.is_constant() && rhs.is_constant();
  n->count = 1 + lhs.node_count() + rhs.node_count();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, const Expr& arg) {
  if (arg.kind() == Kind::Constant) {
    double v = 0.0;
    if (try_fold([&] { return apply_unary(op, arg.value()); }, v)) return constant(v);
  }
  if (op == UnaryOp::Neg && arg.kind() == Kind::Unary && arg.unary_op() == UnaryOp::Neg) {
    return arg.arg();
  }
  return make_unary(op, arg);
}

Expr Expr::binary(BinaryOp op, const Expr& lhs, const Expr& rhs) {
  if (lhs.kind() == Kind::Constant && rhs.kind() == Kind::Constant) {
    double v = 0.0;
    if (try_fold([&] { return apply_binary(op, lhs.value(), rhs.value()); }, v)) {
      return constant(v);
    }
  }
  switch (op) {
    case BinaryOp::Add:
      if (lhs.is_zero()) return rhs;
      if (rhs.is_zero()) return lhs;
      break;
    case BinaryOp::Sub:
      if (rhs.is_zero()) return lhs;
      if (lhs.is_zero()) return unary(UnaryOp::Neg, rhs);
      break;
    case BinaryOp::Mul:
      if (lhs.is_zero() || rhs.is_zero()) return Expr();
      if (lhs.is_one()) return rhs;
      if (rhs.is_one()) return lhs;
      break;
    case BinaryOp::Div:
      if (lhs.is_zero() && !rhs.is_zero()) return Expr();
      if (rhs.is_one()) return lhs;
      break;
    case BinaryOp::Pow:
      if (rhs.is_one()) return lhs;
      if (rhs.is_zero()) return constant(1.0);
      break;
  }
  return make_binary(op, lhs, rhs);
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
std::size_t Expr::symbol_index() const noexcept { return node_->index; }
const std::string& Expr::symbol_name() const noexcept { return node_->name; }
UnaryOp Expr::unary_op() const noexcept { return node_->uop; }
BinaryOp Expr::binary_op() const noexcept { return node_->bop; }
const Expr& Expr::arg() const noexcept { return node_->a; }
const Expr& Expr::lhs() const noexcept { return node_->a; }
const Expr& Expr::rhs() const noexcept { return node_->b; }
bool Expr::is_constant() const noexcept { return node_->constant; }
bool Expr::is_zero() const noexcept { return kind() == Kind::Constant && value() == 0.0; }
bool Expr::is_one() const noexcept { return kind() == Kind::Constant && value() == 1.0; }
std::size_t Expr::node_count() const noexcept { return node_->count; }

bool Expr::same_as(const Expr& other) const noexcept {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Constant: return value() == other.value();
    case Kind::Symbol: return symbol_index() == other.symbol_index();
    case Kind::Unary: return unary_op() == other.unary_op() && arg().same_as(other.arg());
    case Kind::Binary:
      return binary_op() == other.binary_op() && lhs().same_as(other.lhs()) &&
             rhs().same_as(other.rhs());
  }
  return false;
}

double Expr::evaluate(std::span<const double> values) const {
  switch (kind()) {
    case Kind::Constant: return value();
    case Kind::Symbol:
      if (symbol_index() >= values.size()) {
        throw UsageError("no value bound for symbol '" + symbol_name() + "'");
      }
      return values[symbol_index()];
    case Kind::Unary: {
      const double r = apply_unary(unary_op(), arg().evaluate(values));
      if (!std::isfinite(r)) throw DomainError("non-finite result in " + std::string(ahg::to_string(unary_op())));
      return r;
    }
    case Kind::Binary: {
      const double x = lhs().evaluate(values);
      const double y = rhs().evaluate(values);
      const double r = apply_binary(binary_op(), x, y);
      if (!std::isfinite(r)) throw DomainError("non-finite result");
      return r;
    }
  }
  return 0.0;
}

// Printing ------------------------------------------------------------------

namespace {

// Grammar levels: 1 expr, 2 term, 3 factor, 4 power, 5 atom.
int level_of(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e.value() < 0.0 ? 3 : 5;
    case Expr::Kind::Symbol: return 5;
    case Expr::Kind::Unary: return e.unary_op() == UnaryOp::Neg ? 3 : 5;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
  }
  return 5;
}

void print(const Expr& e, int min_level, std::string& out);

void print_wrapped(const Expr& e, int min_level, std::string& out) {
  if (level_of(e) < min_level) {
    out += '(';
    print(e, 1, out);
    out += ')';
  } else {
    print(e, min_level, out);
  }
}

void print(const Expr& e, int min_level, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      if (e.value() < 0.0) {
        // Negative literals only arise from folding; spell them as negation.
        if (min_level > 3) out += '(';
        out += '-';
        out += format_number(-e.value());
        if (min_level > 3) out += ')';
      } else {
        out += format_number(e.value());
      }
      return;
    case Expr::Kind::Symbol:
      out += e.symbol_name();
      return;
    case Expr::Kind::Unary:
      if (e.unary_op() == UnaryOp::Neg) {
        out += '-';
        print_wrapped(e.arg(), 4, out);
      } else {
        out += to_string(e.unary_op());
        out += '(';
        print(e.arg(), 1, out);
        out += ')';
      }
      return;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          print_wrapped(e.lhs(), 1, out);
          out += e.binary_op() == BinaryOp::Add ? " + " : " - ";
          print_wrapped(e.rhs(), 2, out);
          return;
        case BinaryOp::Mul:
        case BinaryOp::Div:
          print_wrapped(e.lhs(), 2, out);
          out += e.binary_op() == BinaryOp::Mul ? "*" : "/";
          print_wrapped(e.rhs(), 3, out);
          return;
        case BinaryOp::Pow:
          print_wrapped(e.lhs(), 5, out);
          out += '^';
          print_wrapped(e.rhs(), 3, out);
          return;
      }
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, 1, out);
  return out;
}

std::string format_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Operators -----------------------------------------------------------------

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Neg, a); }
Expr pow(const Expr& base, const Expr& exponent) { return Expr::binary(BinaryOp::Pow, base, exponent); }
Expr exp(const Expr& a) { return Expr::unary(UnaryOp::Exp, a); }
Expr log(const Expr& a) { return Expr::unary(UnaryOp::Log, a); }
Expr sin(const Expr& a) { return Expr::unary(UnaryOp::Sin, a); }
Expr cos(const Expr& a) { return Expr::unary(UnaryOp::Cos, a); }
Expr sqrt(const Expr& a) { return Expr::unary(UnaryOp::Sqrt, a); }

// Differentiation -----------------------------------------------------------

Expr differentiate(const Expr& e, std::size_t index) {
  if (e.is_constant()) return Expr();
  const auto c = [](double v) { return Expr::constant(v); };
  switch (e.kind()) {
    case Expr::Kind::Constant: return Expr();
    case Expr::Kind::Symbol: return e.symbol_index() == index ? c(1.0) : Expr();
    case Expr::Kind::Unary: {
      const Expr& a = e.arg();
      const Expr da = differentiate(a, index);
      if (da.is_zero()) return Expr();
      switch (e.unary_op()) {
        case UnaryOp::Neg: return -da;
        case UnaryOp::Sin: return cos(a) * da;
        case UnaryOp::Cos: return -(sin(a) * da);
        case UnaryOp::Tan: return da / pow(cos(a), c(2.0));
        case UnaryOp::Exp: return e * da;
        case UnaryOp::Log: return da / a;
        case UnaryOp::Sinh: return Expr::unary(UnaryOp::Cosh, a) * da;
        case UnaryOp::Cosh: return Expr::unary(UnaryOp::Sinh, a) * da;
        case UnaryOp::Tanh: return (c(1.0) - pow(e, c(2.0))) * da;
        case UnaryOp::Sqrt: return da / (c(2.0) * e);
      }
      break;
    }
    case Expr::Kind::Binary: {
      const Expr& f = e.lhs();
      const Expr& g = e.rhs();
      const Expr df = differentiate(f, index);
      const Expr dg = differentiate(g, index);
      switch (e.binary_op()) {
        case BinaryOp::Add: return df + dg;
        case BinaryOp::Sub: return df - dg;
        case BinaryOp::Mul: return df * g + f * dg;
        case BinaryOp::Div: return df / g - f * dg / pow(g, c(2.0));
        case BinaryOp::Pow:
          if (g.is_constant()) {
            return g * pow(f, g - c(1.0)) * df;
          }
          if (f.is_constant()) {
            return e * log(f) * dg;
          }
          // f^g = exp(g log f)
          return e * (dg * log(f) + g * df / f);
      }
      break;
    }
  }
  return Expr();
}

Expr differentiate(const Expr& e, std::string_view name, std::span<const std::string> symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == name) return differentiate(e, i);
  }
  throw UsageError("unknown coordinate '" + std::string(name) + "'");
}

double evaluate(const Expr& e, const std::map<std::string, double>& bindings) {
  // Resolve names to a dense vector indexed like the tree's symbols.
  std::vector<double> values;
  std::vector<bool> bound;
  std::function<void(const Expr&)> collect = [&](const Expr& x) {
    switch (x.kind()) {
      case Expr::Kind::Constant: return;
      case Expr::Kind::Symbol: {
        const auto it = bindings.find(x.symbol_name());
        if (it == bindings.end()) {
          throw UsageError("missing binding for '" + x.symbol_name() + "'");
        }
        if (x.symbol_index() >= values.size()) {
          values.resize(x.symbol_index() + 1, 0.0);
          bound.resize(x.symbol_index() + 1, false);
        }
        values[x.symbol_index()] = it->second;
        bound[x.symbol_index()] = true;
        return;
      }
      case Expr::Kind::Unary: collect(x.arg()); return;
      case Expr::Kind::Binary:
        collect(x.lhs());
        collect(x.rhs());
        return;
    }
  };
  collect(e);
  return e.evaluate(values);
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e;
    case Expr::Kind::Symbol:
      if (e.symbol_index() >= replacements.size()) {
        throw UsageError("no replacement for symbol '" + e.symbol_name() + "'");
      }
      return replacements[e.symbol_index()];
    case Expr::Kind::Unary: return Expr::unary(e.unary_op(), substitute(e.arg(), replacements));
    case Expr::Kind::Binary:
      return Expr::binary(e.binary_op(), substitute(e.lhs(), replacements),
                          substitute(e.rhs(), replacements));
  }
  return e;
}

}  // namespace ahg
