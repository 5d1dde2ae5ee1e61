#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ricci/geometry.hpp"

namespace ricci {

// Small expression language for user-defined immersions.
//
//   spec   := expr ("," expr)*
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := unary ("^" factor)?
//   unary  := "-" unary | atom
//   atom   := NUMBER | "pi" | "e" | VAR | FUNC "(" expr ")" | "(" expr ")"
//   VAR    := "u" DIGITS ; FUNC := sin | cos | exp | sqrt | log

enum class ExprKind {
  constant,
  variable,
  neg,
  sin_fn,
  cos_fn,
  exp_fn,
  sqrt_fn,
  log_fn,
  add,
  sub,
  mul,
  div,
  pow,
};

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
  ExprKind kind;
  double value = 0.0; // constant
  int var_index = 0;  // variable, 0-based
  ExprPtr lhs;
  ExprPtr rhs;
};

struct ParseError : argument_error {
  ParseError(const std::string& msg, int pos1based)
      : argument_error(msg + " (at character " + std::to_string(pos1based) + ")"),
        position(pos1based) {}
  int position;
};

struct ImmersionSpec {
  int n = 0;                       // domain dimension
  std::vector<ExprPtr> components; // length m
  MatrixXd domain_box;             // (n x 2)
};

namespace exprdetail {

constexpr int kMaxDepth = 64;

class Parser {
public:
  Parser(const std::string& text, int n) : text_(text), n_(n) {}

  std::vector<ExprPtr> parse_spec() {
    std::vector<ExprPtr> components;
    components.push_back(parse_expr(0));
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      components.push_back(parse_expr(0));
      skip_ws();
    }
    if (pos_ < text_.size()) {
      fail("unexpected input; expected ',' or end of expression");
    }
    return components;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void check_depth(int depth) const {
    if (depth > kMaxDepth) {
      throw ParseError("expression nesting exceeds depth limit 64",
                       static_cast<int>(pos_) + 1);
    }
  }

  ExprPtr parse_expr(int depth) {
    check_depth(depth);
    ExprPtr lhs = parse_term(depth + 1);
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      ExprPtr rhs = parse_term(depth + 1);
      auto node = std::make_shared<ExprAst>();
      node->kind = c == '+' ? ExprKind::add : ExprKind::sub;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_term(int depth) {
    check_depth(depth);
    ExprPtr lhs = parse_factor(depth + 1);
    while (true) {
      const char c = peek();
      if (c != '*' && c != '/') break;
      ++pos_;
      ExprPtr rhs = parse_factor(depth + 1);
      auto node = std::make_shared<ExprAst>();
      node->kind = c == '*' ? ExprKind::mul : ExprKind::div;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  // Right-associative power.
  ExprPtr parse_factor(int depth) {
    check_depth(depth);
    ExprPtr base = parse_unary(depth + 1);
    if (peek() == '^') {
      ++pos_;
      ExprPtr exponent = parse_factor(depth + 1);
      auto node = std::make_shared<ExprAst>();
      node->kind = ExprKind::pow;
      node->lhs = base;
      node->rhs = exponent;
      return node;
    }
    return base;
  }

  ExprPtr parse_unary(int depth) {
    check_depth(depth);
    if (peek() == '-') {
      ++pos_;
      auto node = std::make_shared<ExprAst>();
      node->kind = ExprKind::neg;
      node->lhs = parse_unary(depth + 1);
      return node;
    }
    return parse_atom(depth + 1);
  }

  ExprPtr parse_atom(int depth) {
    check_depth(depth);
    const char c = peek();
    if (c == '\0') fail("unexpected end of input; expected an operand");
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr(depth + 1);
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return parse_identifier(depth);
    }
    fail("expected a number, variable, function call or '('");
  }

  ExprPtr parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    const char* begin = text_.c_str() + start;
    char* after = nullptr;
    const double v = std::strtod(begin, &after);
    end = start + static_cast<std::size_t>(after - begin);
    if (end == start) fail("malformed number");
    pos_ = end;
    auto node = std::make_shared<ExprAst>();
    node->kind = ExprKind::constant;
    node->value = v;
    return node;
  }

  ExprPtr parse_identifier(int depth) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])))) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);
    auto constant = [&](double v) {
      auto node = std::make_shared<ExprAst>();
      node->kind = ExprKind::constant;
      node->value = v;
      return node;
    };
    if (name == "pi") return constant(3.14159265358979323846);
    if (name == "e") return constant(2.71828182845904523536);

    if (name.size() >= 2 && name[0] == 'u' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int idx = std::stoi(name.substr(1));
      if (idx < 1 || idx > 16) {
        throw ParseError("variable index out of range: " + name,
                         static_cast<int>(start) + 1);
      }
      if (idx > n_) {
        throw ParseError("variable " + name + " exceeds declared dimension n=" +
                             std::to_string(n_),
                         static_cast<int>(start) + 1);
      }
      auto node = std::make_shared<ExprAst>();
      node->kind = ExprKind::variable;
      node->var_index = idx - 1;
      return node;
    }

    ExprKind kind;
    if (name == "sin") kind = ExprKind::sin_fn;
    else if (name == "cos") kind = ExprKind::cos_fn;
    else if (name == "exp") kind = ExprKind::exp_fn;
    else if (name == "sqrt") kind = ExprKind::sqrt_fn;
    else if (name == "log") kind = ExprKind::log_fn;
    else {
      throw ParseError("unknown identifier '" + name + "'",
                       static_cast<int>(start) + 1);
    }
    if (peek() != '(') fail("expected '(' after function name");
    ++pos_;
    ExprPtr arg = parse_expr(depth + 1);
    if (peek() == ',') {
      fail("function '" + name + "' takes exactly one argument");
    }
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    auto node = std::make_shared<ExprAst>();
    node->kind = kind;
    node->lhs = arg;
    return node;
  }

  std::string text_;
  int n_;
  std::size_t pos_ = 0;
};

inline double eval_node(const ExprAst& node, const VectorXd& u) {
  auto check = [](double v, const char* what) {
    if (!std::isfinite(v)) {
      throw domain_error(std::string("numerical domain error in ") + what);
    }
    return v;
  };
  switch (node.kind) {
    case ExprKind::constant:
      return node.value;
    case ExprKind::variable:
      return u(node.var_index);
    case ExprKind::neg:
      return -eval_node(*node.lhs, u);
    case ExprKind::sin_fn:
      return std::sin(eval_node(*node.lhs, u));
    case ExprKind::cos_fn:
      return std::cos(eval_node(*node.lhs, u));
    case ExprKind::exp_fn:
      return check(std::exp(eval_node(*node.lhs, u)), "exp (overflow)");
    case ExprKind::sqrt_fn: {
      const double a = eval_node(*node.lhs, u);
      if (a < 0.0) throw domain_error("sqrt of a negative value");
      return std::sqrt(a);
    }
    case ExprKind::log_fn: {
      const double a = eval_node(*node.lhs, u);
      if (a <= 0.0) throw domain_error("log of a non-positive value");
      return std::log(a);
    }
    case ExprKind::add:
      return eval_node(*node.lhs, u) + eval_node(*node.rhs, u);
    case ExprKind::sub:
      return eval_node(*node.lhs, u) - eval_node(*node.rhs, u);
    case ExprKind::mul:
      return eval_node(*node.lhs, u) * eval_node(*node.rhs, u);
    case ExprKind::div: {
      const double b = eval_node(*node.rhs, u);
      if (b == 0.0) throw domain_error("division by zero");
      return eval_node(*node.lhs, u) / b;
    }
    case ExprKind::pow: {
      const double a = eval_node(*node.lhs, u);
      const double b = eval_node(*node.rhs, u);
      // Integer exponents by repeated multiplication for exactness.
      if (b == std::floor(b) && std::abs(b) <= 64.0) {
        const long e = static_cast<long>(b);
        double r = 1.0;
        const double base = e < 0 ? 1.0 / a : a;
        if (e < 0 && a == 0.0) throw domain_error("zero raised to a negative power");
        for (long i = 0; i < std::labs(e); ++i) r *= base;
        return check(r, "pow");
      }
      return check(std::pow(a, b), "pow");
    }
  }
  throw numerical_error("eval: corrupt expression node");
}

inline void pretty_print_node(const ExprAst& node, std::ostream& os) {
  auto bin = [&](const char* op) {
    os << '(';
    pretty_print_node(*node.lhs, os);
    os << ' ' << op << ' ';
    pretty_print_node(*node.rhs, os);
    os << ')';
  };
  auto fn = [&](const char* name) {
    os << name << '(';
    pretty_print_node(*node.lhs, os);
    os << ')';
  };
  switch (node.kind) {
    case ExprKind::constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << node.value;
      os << tmp.str();
      break;
    }
    case ExprKind::variable: os << 'u' << (node.var_index + 1); break;
    case ExprKind::neg:
      os << "(-";
      pretty_print_node(*node.lhs, os);
      os << ')';
      break;
    case ExprKind::sin_fn: fn("sin"); break;
    case ExprKind::cos_fn: fn("cos"); break;
    case ExprKind::exp_fn: fn("exp"); break;
    case ExprKind::sqrt_fn: fn("sqrt"); break;
    case ExprKind::log_fn: fn("log"); break;
    case ExprKind::add: bin("+"); break;
    case ExprKind::sub: bin("-"); break;
    case ExprKind::mul: bin("*"); break;
    case ExprKind::div: bin("/"); break;
    case ExprKind::pow: bin("^"); break;
  }
}

inline bool same_structure(const ExprAst& a, const ExprAst& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ExprKind::constant) return a.value == b.value;
  if (a.kind == ExprKind::variable) return a.var_index == b.var_index;
  if (a.lhs && (!b.lhs || !same_structure(*a.lhs, *b.lhs))) return false;
  if (a.rhs && (!b.rhs || !same_structure(*a.rhs, *b.rhs))) return false;
  return static_cast<bool>(a.lhs) == static_cast<bool>(b.lhs) &&
         static_cast<bool>(a.rhs) == static_cast<bool>(b.rhs);
}

} // namespace exprdetail

inline ImmersionSpec parse(const std::string& text, int n) {
  if (n < 1 || n > 16) throw argument_error("parse: domain dimension out of range");
  exprdetail::Parser parser(text, n);
  ImmersionSpec spec;
  spec.n = n;
  spec.components = parser.parse_spec();
  spec.domain_box.resize(n, 2);
  spec.domain_box.col(0).setConstant(-1.0);
  spec.domain_box.col(1).setConstant(1.0);
  return spec;
}

inline VectorXd eval_ast(const ImmersionSpec& spec, const VectorXd& point) {
  if (point.size() != spec.n) throw argument_error("eval_ast: point dimension mismatch");
  for (int j = 0; j < spec.n; ++j) {
    if (point(j) < spec.domain_box(j, 0) || point(j) > spec.domain_box(j, 1)) {
      throw domain_error("eval_ast: point outside the domain box");
    }
  }
  VectorXd out(static_cast<int>(spec.components.size()));
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    out(static_cast<int>(c)) = exprdetail::eval_node(*spec.components[c], point);
  }
  return out;
}

inline std::string pretty_print(const ImmersionSpec& spec) {
  std::ostringstream os;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    if (c) os << ", ";
    exprdetail::pretty_print_node(*spec.components[c], os);
  }
  return os.str();
}

inline bool structurally_equal(const ImmersionSpec& a, const ImmersionSpec& b) {
  if (a.n != b.n || a.components.size() != b.components.size()) return false;
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    if (!exprdetail::same_structure(*a.components[c], *b.components[c])) return false;
  }
  return true;
}

// Expression files: first line "n=<int>", optional "box=<lo>:<hi>" lines (one
// per variable, in order), then the component expressions.
inline ImmersionSpec parse_immersion_file(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  int n = 0;
  std::vector<std::pair<double, double>> boxes;
  std::string expr_text;
  bool have_n = false;
  while (std::getline(in, line)) {
    std::string trimmed = line;
    const auto b = trimmed.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    trimmed = trimmed.substr(b);
    if (!have_n) {
      if (trimmed.rfind("n=", 0) != 0) {
        throw argument_error("expression file must start with 'n=<int>'");
      }
      n = std::stoi(trimmed.substr(2));
      have_n = true;
      continue;
    }
    if (trimmed.rfind("box=", 0) == 0) {
      const auto colon = trimmed.find(':');
      if (colon == std::string::npos) {
        throw argument_error("malformed box line, expected 'box=<lo>:<hi>'");
      }
      boxes.emplace_back(std::stod(trimmed.substr(4, colon - 4)),
                         std::stod(trimmed.substr(colon + 1)));
      continue;
    }
    expr_text += trimmed + "\n";
  }
  if (!have_n) throw argument_error("expression file missing 'n=' header");
  ImmersionSpec spec = parse(expr_text, n);
  if (!boxes.empty()) {
    if (static_cast<int>(boxes.size()) != n) {
      throw argument_error("expression file: need one box line per variable");
    }
    for (int j = 0; j < n; ++j) {
      if (!(boxes[j].first < boxes[j].second)) {
        throw argument_error("expression file: empty domain box");
      }
      spec.domain_box(j, 0) = boxes[j].first;
      spec.domain_box(j, 1) = boxes[j].second;
    }
  }
  if (static_cast<int>(spec.components.size()) <= n) {
    throw argument_error("immersion needs more ambient components than domain "
                         "dimensions (m > n)");
  }
  return spec;
}

// Wrap a parsed spec as an Immersion (finite-difference Jacobian).
inline Immersion to_immersion(ImmersionSpec spec) {
  auto shared = std::make_shared<const ImmersionSpec>(std::move(spec));
  Immersion imm = Immersion::make(
      shared->n, static_cast<int>(shared->components.size()),
      [shared](const VectorXd& u) { return eval_ast(*shared, u); });
  imm.domain_box = shared->domain_box;
  return imm;
}

} // namespace ricci
