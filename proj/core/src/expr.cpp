#include "driftkit/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "driftkit/error.hpp"

namespace driftkit {

struct Expr::Node {
  enum class Kind { Constant, VarX, VarN, Add, Sub, Mul, Div, Pow, Neg, Exp, Ln, Min, Max, Ceil };
  Kind kind;
  double value = 0.0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}, double value = 0.0) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->value = value;
  node->args = std::move(args);
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Kind::Add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Node::Kind::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Kind::Mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Node::Kind::Div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        pos_ = p;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number '" + std::string(first, last) + "'", start);
    return make(Node::Kind::Constant, {}, value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make(Node::Kind::VarX);
    if (name == "n") return make(Node::Kind::VarN);

    Node::Kind kind;
    std::size_t arity = 1;
    if (name == "exp") {
      kind = Node::Kind::Exp;
    } else if (name == "ln") {
      kind = Node::Kind::Ln;
    } else if (name == "ceil") {
      kind = Node::Kind::Ceil;
    } else if (name == "min") {
      kind = Node::Kind::Min;
      arity = 2;
    } else if (name == "max") {
      kind = Node::Kind::Max;
      arity = 2;
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    expect('(');
    std::vector<NodePtr> args;
    args.push_back(expr());
    while (accept(',')) args.push_back(expr());
    expect(')');
    if (args.size() != arity) {
      throw ParseError(std::string(name) + " expects " + std::to_string(arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       start);
    }
    return make(kind, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Node& node, double x, double n) {
  using K = Node::Kind;
  switch (node.kind) {
    case K::Constant:
      return node.value;
    case K::VarX:
      return x;
    case K::VarN:
      return n;
    case K::Add:
      return eval(*node.args[0], x, n) + eval(*node.args[1], x, n);
    case K::Sub:
      return eval(*node.args[0], x, n) - eval(*node.args[1], x, n);
    case K::Mul:
      return eval(*node.args[0], x, n) * eval(*node.args[1], x, n);
    case K::Div: {
      const double den = eval(*node.args[1], x, n);
      if (den == 0.0) throw DomainError("division by zero");
      return eval(*node.args[0], x, n) / den;
    }
    case K::Pow: {
      const double base = eval(*node.args[0], x, n);
      const double expo = eval(*node.args[1], x, n);
      const double v = std::pow(base, expo);
      if (std::isnan(v)) throw DomainError("power of negative base with non-integer exponent");
      return v;
    }
    case K::Neg:
      return -eval(*node.args[0], x, n);
    case K::Exp:
      return std::exp(eval(*node.args[0], x, n));
    case K::Ln: {
      const double arg = eval(*node.args[0], x, n);
      if (!(arg > 0.0)) throw DomainError("ln of non-positive value " + std::to_string(arg));
      return std::log(arg);
    }
    case K::Min:
      return std::min(eval(*node.args[0], x, n), eval(*node.args[1], x, n));
    case K::Max:
      return std::max(eval(*node.args[0], x, n), eval(*node.args[1], x, n));
    case K::Ceil:
      return std::ceil(eval(*node.args[0], x, n));
  }
  return 0.0;
}

bool mentions_x(const Node& node) {
  if (node.kind == Node::Kind::VarX) return true;
  for (const auto& a : node.args)
    if (mentions_x(*a)) return true;
  return false;
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Parser parser(text);
  return Expr(parser.parse(), std::string(text));
}

Expr Expr::constant(double value) {
  return Expr(make(Node::Kind::Constant, {}, value), std::to_string(value));
}

double Expr::evaluate(double x, double n) const {
  const double v = eval(*root_, x, n);
  if (!std::isfinite(v)) throw DomainError("expression '" + source_ + "' is not finite at x=" + std::to_string(x));
  return v;
}

bool Expr::depends_on_x() const noexcept { return mentions_x(*root_); }

}  // namespace driftkit
