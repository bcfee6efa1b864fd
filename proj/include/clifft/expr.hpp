// Scalar expression trees for defining field components on the command line.
//
// Grammar, loosest to tightest binding:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?          right associative, so 2^3^2 = 2^(3^2)
//   atom  := number | ident | ident '(' expr ')' | '(' expr ')'
// Identifiers are variables x1..x10, constants pi and e, or the functions
// exp, sin, cos, sqrt, abs. Whitespace is ignored everywhere.

#pragma once

#include <charconv>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clifft {

struct SyntaxError : std::invalid_argument {
  SyntaxError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at offset " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

struct UnknownIdentifier : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct ExprNode;
using NodePtr = std::unique_ptr<ExprNode>;

struct ExprNode {
  enum class Kind { Number, Var, Constant, Unary, Binary, Call };
  Kind kind;
  double number = 0.0;  // Number
  int var = 0;          // Var, 1-based
  std::string name;     // Constant or Call
  char op = 0;          // Unary '-', Binary one of + - * / ^
  NodePtr lhs, rhs;     // Unary and Call use lhs only
};

inline NodePtr clone(const ExprNode& n) {
  auto out = std::make_unique<ExprNode>();
  out->kind = n.kind;
  out->number = n.number;
  out->var = n.var;
  out->name = n.name;
  out->op = n.op;
  if (n.lhs) out->lhs = clone(*n.lhs);
  if (n.rhs) out->rhs = clone(*n.rhs);
  return out;
}

inline bool known_function(std::string_view name) {
  return name == "exp" || name == "sin" || name == "cos" || name == "sqrt" ||
         name == "abs";
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    auto node = parse_expr();
    skip_ws();
    if (pos_ != s_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return node;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' ||
                                s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool consume(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  NodePtr parse_expr() {
    auto node = parse_term();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        const char op = s_[pos_++];
        node = binary(op, std::move(node), parse_term());
      } else {
        return node;
      }
    }
  }

  NodePtr parse_term() {
    auto node = parse_unary();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        const char op = s_[pos_++];
        node = binary(op, std::move(node), parse_unary());
      } else {
        return node;
      }
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) {
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::Unary;
      node->op = '-';
      node->lhs = parse_unary();
      return node;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    if (consume('^')) return binary('^', std::move(base), parse_unary());
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto node = parse_expr();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return node;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_')
      return parse_ident();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double value = 0.0;
    auto [next, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc())
      throw SyntaxError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(next - begin);
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::Number;
    node->number = value;
    return node;
  }

  NodePtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      const bool ident_char = (c >= 'a' && c <= 'z') ||
                              (c >= 'A' && c <= 'Z') ||
                              (c >= '0' && c <= '9') || c == '_';
      if (!ident_char) break;
      ++pos_;
    }
    const std::string_view name = s_.substr(start, pos_ - start);

    if (known_function(name)) {
      if (!consume('('))
        throw SyntaxError("expected '(' after function name", pos_);
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::Call;
      node->name = std::string(name);
      node->lhs = parse_expr();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return node;
    }
    if (name == "pi" || name == "e") {
      auto node = std::make_unique<ExprNode>();
      node->kind = ExprNode::Kind::Constant;
      node->name = std::string(name);
      return node;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = 0;
      bool digits = true;
      for (std::size_t k = 1; k < name.size(); ++k) {
        if (name[k] < '0' || name[k] > '9') {
          digits = false;
          break;
        }
        idx = idx * 10 + (name[k] - '0');
      }
      if (digits && idx >= 1 && idx <= 10) {
        auto node = std::make_unique<ExprNode>();
        node->kind = ExprNode::Kind::Var;
        node->var = idx;
        return node;
      }
    }
    throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'",
                            start);
  }

  NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_unique<ExprNode>();
    node->kind = ExprNode::Kind::Binary;
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Binary:
      if (n.op == '+' || n.op == '-') return 1;
      if (n.op == '*' || n.op == '/') return 2;
      return 4;  // '^'
    case ExprNode::Kind::Unary:
      return 3;
    default:
      return 5;
  }
}

inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

inline void print_node(const ExprNode& n, int context, std::string& out) {
  const int prec = precedence(n);
  const bool parens = prec < context;
  if (parens) out += '(';
  switch (n.kind) {
    case ExprNode::Kind::Number:
      out += format_number(n.number);
      break;
    case ExprNode::Kind::Var:
      out += 'x';
      out += std::to_string(n.var);
      break;
    case ExprNode::Kind::Constant:
      out += n.name;
      break;
    case ExprNode::Kind::Unary:
      out += '-';
      print_node(*n.lhs, 3, out);
      break;
    case ExprNode::Kind::Call:
      out += n.name;
      out += '(';
      print_node(*n.lhs, 0, out);
      out += ')';
      break;
    case ExprNode::Kind::Binary:
      if (n.op == '^') {
        // Right associative; the exponent may start with a unary minus.
        print_node(*n.lhs, 5, out);
        out += '^';
        print_node(*n.rhs, 3, out);
      } else {
        print_node(*n.lhs, prec, out);
        out += n.op;
        print_node(*n.rhs, prec + 1, out);
      }
      break;
  }
  if (parens) out += ')';
}

inline double eval_node(const ExprNode& n, std::span<const double> xs) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return n.number;
    case ExprNode::Kind::Var:
      if (static_cast<std::size_t>(n.var) > xs.size())
        throw EvalError("variable x" + std::to_string(n.var) +
                        " has no value in this context");
      return xs[static_cast<std::size_t>(n.var) - 1];
    case ExprNode::Kind::Constant:
      return n.name == "pi" ? M_PI : M_E;
    case ExprNode::Kind::Unary:
      return -eval_node(*n.lhs, xs);
    case ExprNode::Kind::Call: {
      const double arg = eval_node(*n.lhs, xs);
      double out;
      if (n.name == "exp") out = std::exp(arg);
      else if (n.name == "sin") out = std::sin(arg);
      else if (n.name == "cos") out = std::cos(arg);
      else if (n.name == "abs") out = std::fabs(arg);
      else {
        if (arg < 0.0) throw EvalError("sqrt of negative value");
        out = std::sqrt(arg);
      }
      if (!std::isfinite(out)) throw EvalError("non-finite result in " + n.name);
      return out;
    }
    case ExprNode::Kind::Binary: {
      const double a = eval_node(*n.lhs, xs);
      const double b = eval_node(*n.rhs, xs);
      double out;
      switch (n.op) {
        case '+': out = a + b; break;
        case '-': out = a - b; break;
        case '*': out = a * b; break;
        case '/':
          if (b == 0.0) throw EvalError("division by zero");
          out = a / b;
          break;
        default: out = std::pow(a, b); break;
      }
      if (!std::isfinite(out))
        throw EvalError(std::string("non-finite result of '") + n.op + "'");
      return out;
    }
  }
  throw EvalError("corrupt expression node");
}

inline bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.op != b.op || a.var != b.var || a.name != b.name)
    return false;
  if (a.kind == ExprNode::Kind::Number &&
      !(a.number == b.number || (std::isnan(a.number) && std::isnan(b.number))))
    return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) ||
      static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs))
    return false;
  if (a.lhs && !nodes_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !nodes_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

inline int max_var_node(const ExprNode& n) {
  int m = n.kind == ExprNode::Kind::Var ? n.var : 0;
  if (n.lhs) m = std::max(m, max_var_node(*n.lhs));
  if (n.rhs) m = std::max(m, max_var_node(*n.rhs));
  return m;
}

}  // namespace detail

class ScalarExpr {
 public:
  static ScalarExpr parse(std::string_view text) {
    return ScalarExpr(detail::ExprParser(text).parse());
  }

  ScalarExpr(const ScalarExpr& o) : root_(detail::clone(*o.root_)) {}
  ScalarExpr(ScalarExpr&&) = default;
  ScalarExpr& operator=(const ScalarExpr& o) {
    root_ = detail::clone(*o.root_);
    return *this;
  }
  ScalarExpr& operator=(ScalarExpr&&) = default;

  double eval(std::span<const double> xs) const {
    return detail::eval_node(*root_, xs);
  }

  /// Minimal-parenthesis rendering; parsing it back gives an equal tree.
  std::string str() const {
    std::string out;
    detail::print_node(*root_, 0, out);
    return out;
  }

  /// Highest variable index referenced, 0 for constant expressions.
  int max_var() const { return detail::max_var_node(*root_); }

  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    return detail::nodes_equal(*a.root_, *b.root_);
  }

 private:
  explicit ScalarExpr(detail::NodePtr root) : root_(std::move(root)) {}
  detail::NodePtr root_;
};

}  // namespace clifft
