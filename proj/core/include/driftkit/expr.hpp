#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace driftkit {

// Immutable expression tree over the variables `x` and `n`.
//
// Grammar (whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?            right-associative
//   primary := number | 'x' | 'n' | func '(' args ')' | '(' expr ')'
//   func    := exp | ln | ceil (one argument), min | max (two arguments)
// Numbers are decimal or scientific (1, 0.5, .5, 2e-3).
class Expr {
 public:
  static Expr parse(std::string_view text);
  static Expr constant(double value);

  // Throws DomainError on ln of a non-positive value, division by zero, or a
  // non-finite result.
  double evaluate(double x, double n = 0.0) const;

  bool depends_on_x() const noexcept;
  const std::string& source() const noexcept { return source_; }

  struct Node;

 private:
  Expr(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace driftkit
