#pragma once

// Closed-form scalar expressions over chart coordinates.
//
// An Expr is an immutable tree: constants, coordinate symbols, unary
// functions and binary operators. Symbols are referenced by their index in
// the owning chart's coordinate list, so evaluation takes a flat span of
// coordinate values. Nodes are shared, which makes copying an Expr cheap and
// safe across threads.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ahg {

enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Log, Sinh, Cosh, Tanh, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

std::string_view to_string(UnaryOp op) noexcept;

class Expr {
 public:
  enum class Kind { Constant, Symbol, Unary, Binary };

  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr symbol(std::size_t index, std::string name);

  // Raw node builders: no folding. The parser uses these so the tree
  // mirrors the text exactly.
  static Expr make_unary(UnaryOp op, Expr arg);
  static Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);

  // Folding builders used by differentiation and programmatic construction.
  static Expr unary(UnaryOp op, const Expr& arg);
  static Expr binary(BinaryOp op, const Expr& lhs, const Expr& rhs);

  Kind kind() const noexcept;
  double value() const noexcept;               // Constant
  std::size_t symbol_index() const noexcept;   // Symbol
  const std::string& symbol_name() const noexcept;
  UnaryOp unary_op() const noexcept;           // Unary
  BinaryOp binary_op() const noexcept;         // Binary
  const Expr& arg() const noexcept;            // Unary operand
  const Expr& lhs() const noexcept;            // Binary operands
  const Expr& rhs() const noexcept;

  bool is_constant() const noexcept;  // contains no symbol
  bool is_zero() const noexcept;      // literal 0
  bool is_one() const noexcept;       // literal 1
  std::size_t node_count() const noexcept;

  /// Structural equality (constants compared bit-for-bit by value).
  bool same_as(const Expr& other) const noexcept;

  /// Evaluates with values[i] bound to symbol i. Throws DomainError on a
  /// non-finite or undefined result, UsageError if a symbol index is out of
  /// range.
  double evaluate(std::span<const double> values) const;

  /// Infix text that parses back to the same tree.
  std::string to_string() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);

/// Parses `text` with the grammar
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? power
///   power  := atom ("^" factor)?
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")"
/// Identifiers resolve to coordinate symbols first, then the constants pi
/// and e. Throws ParseError carrying the byte offset of the failure.
Expr parse(std::string_view text, std::span<const std::string> symbols);

/// Exact partial derivative with respect to symbol `index`.
Expr differentiate(const Expr& e, std::size_t index);

/// Same, naming the symbol. Throws UsageError if `name` is not in `symbols`.
Expr differentiate(const Expr& e, std::string_view name,
                   std::span<const std::string> symbols);

/// Evaluates with named bindings. Every symbol reachable in `e` must be bound.
double evaluate(const Expr& e, const std::map<std::string, double>& bindings);

/// Replaces symbol i by replacements[i] throughout `e`, folding constants.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Formats a double so that it parses back to the same value.
std::string format_number(double v);

}  // namespace ahg
