#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "ahgeom/errors.hpp"
#include "ahgeom/expr.hpp"

namespace ahg {
namespace {

constexpr std::array<std::pair<std::string_view, UnaryOp>, 9> kFunctions{{
    {"sin", UnaryOp::Sin},
    {"cos", UnaryOp::Cos},
    {"tan", UnaryOp::Tan},
    {"exp", UnaryOp::Exp},
    {"log", UnaryOp::Log},
    {"sinh", UnaryOp::Sinh},
    {"cosh", UnaryOp::Cosh},
    {"tanh", UnaryOp::Tanh},
    {"sqrt", UnaryOp::Sqrt},
}};

std::optional<UnaryOp> lookup_function(std::string_view name) {
  for (const auto& [fname, op] : kFunctions) {
    if (fname == name) return op;
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> symbols)
      : text_(text), symbols_(symbols) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError("syntax error at position " + std::to_string(at) + ": " + msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::make_binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::make_binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::make_binary(BinaryOp::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::make_binary(BinaryOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (!accept('-')) return power();
    Expr operand = power();
    if (operand.kind() == Expr::Kind::Constant) return Expr::constant(-operand.value());
    return Expr::make_unary(UnaryOp::Neg, std::move(operand));
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::make_binary(BinaryOp::Pow, base, factor());
    return base;
  }

  Expr atom() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    // Exponent only when digits follow, so "2e" stays number 2 then ident e.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      fail_at("malformed number '" + token + "'", start);
    }
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const bool call = peek() == '(';

    if (const auto fn = lookup_function(name)) {
      if (!call) {
        fail_at("arity mismatch: function '" + std::string(name) + "' expects 1 argument", start);
      }
      ++pos_;  // '('
      Expr arg = expr();
      if (peek() == ',') {
        fail("arity mismatch: function '" + std::string(name) + "' expects 1 argument");
      }
      if (!accept(')')) fail("expected ')'");
      return Expr::make_unary(*fn, std::move(arg));
    }

    std::optional<Expr> resolved;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] == name) {
        resolved = Expr::symbol(i, symbols_[i]);
        break;
      }
    }
    if (!resolved) {
      if (name == "pi") resolved = Expr::constant(std::numbers::pi);
      else if (name == "e") resolved = Expr::constant(std::numbers::e);
    }
    if (!resolved) fail_at("unknown identifier \"" + std::string(name) + "\"", start);
    if (call) fail_at("arity mismatch: '" + std::string(name) + "' is not a function", start);
    return *resolved;
  }

  std::string_view text_;
  std::span<const std::string> symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::span<const std::string> symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols.size(); ++j) {
      if (symbols[i] == symbols[j]) throw UsageError("duplicate coordinate name '" + symbols[i] + "'");
    }
  }
  return Parser(text, symbols).run();
}

}  // namespace ahg
