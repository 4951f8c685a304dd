#include "emforms/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "node.hpp"

namespace emforms {
namespace detail {

namespace {
NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

const NodePtr& zero_node() {
  static const NodePtr n = make({.kind = NK::Rational, .value = Rat(0)});
  return n;
}
const NodePtr& one_node() {
  static const NodePtr n = make({.kind = NK::Rational, .value = Rat(1)});
  return n;
}

Rat rat_pow(const Rat& r, unsigned n) {
  Rat acc(1), base = r;
  while (n) {
    if (n & 1u) acc *= base;
    base *= base;
    n >>= 1u;
  }
  return acc;
}
}  // namespace

NodePtr mk_rational(Rat r) {
  if (r == 0) return zero_node();
  if (r == 1) return one_node();
  return make({.kind = NK::Rational, .value = std::move(r)});
}

NodePtr mk_var(Var v) { return make({.kind = NK::ChartVar, .var = v}); }

NodePtr mk_param(std::string name) {
  return make({.kind = NK::Param, .name = std::move(name)});
}

NodePtr mk_const(NK which) { return make({.kind = which}); }

bool is_rat_literal(const NodePtr& n) { return n->kind == NK::Rational; }

bool is_zero_literal(const NodePtr& n) {
  return n->kind == NK::Rational && n->value == 0;
}

NodePtr mk_add(NodePtr a, NodePtr b) {
  if (is_rat_literal(a) && is_rat_literal(b)) return mk_rational(a->value + b->value);
  if (is_zero_literal(a)) return b;
  if (is_zero_literal(b)) return a;
  return make({.kind = NK::Add, .a = std::move(a), .b = std::move(b)});
}

NodePtr mk_sub(NodePtr a, NodePtr b) {
  if (is_rat_literal(a) && is_rat_literal(b)) return mk_rational(a->value - b->value);
  if (is_zero_literal(b)) return a;
  if (is_zero_literal(a)) return mk_neg(std::move(b));
  return make({.kind = NK::Sub, .a = std::move(a), .b = std::move(b)});
}

NodePtr mk_neg(NodePtr a) {
  if (is_rat_literal(a)) return mk_rational(-a->value);
  if (a->kind == NK::Neg) return a->a;
  return make({.kind = NK::Neg, .a = std::move(a)});
}

NodePtr mk_mul(NodePtr a, NodePtr b) {
  if (is_rat_literal(a) && is_rat_literal(b)) return mk_rational(a->value * b->value);
  if (is_zero_literal(a) || is_zero_literal(b)) return zero_node();
  if (is_rat_literal(a) && a->value == 1) return b;
  if (is_rat_literal(b) && b->value == 1) return a;
  if (is_rat_literal(a) && a->value == -1) return mk_neg(std::move(b));
  if (is_rat_literal(b) && b->value == -1) return mk_neg(std::move(a));
  return make({.kind = NK::Mul, .a = std::move(a), .b = std::move(b)});
}

NodePtr mk_div(NodePtr a, NodePtr b) {
  if (is_rat_literal(b) && b->value != 0) {
    if (is_rat_literal(a)) return mk_rational(a->value / b->value);
    if (b->value == 1) return a;
    return mk_mul(mk_rational(Rat(1) / b->value), std::move(a));
  }
  if (is_zero_literal(a) && is_rat_literal(b) && b->value != 0) return zero_node();
  return make({.kind = NK::Div, .a = std::move(a), .b = std::move(b)});
}

NodePtr mk_pow(NodePtr a, unsigned n) {
  if (n == 0) return one_node();
  if (n == 1) return a;
  if (is_rat_literal(a)) return mk_rational(rat_pow(a->value, n));
  if (a->kind == NK::Pow) {
    unsigned inner = a->exponent;
    return mk_pow(a->a, inner * n);
  }
  return make({.kind = NK::Pow, .exponent = n, .a = std::move(a)});
}

NodePtr mk_fun(FuncKind f, NodePtr a) {
  if (is_zero_literal(a)) {
    switch (f) {
      case FuncKind::Sin:
      case FuncKind::Sinh: return zero_node();
      case FuncKind::Cos:
      case FuncKind::Cosh:
      case FuncKind::Exp: return one_node();
    }
  }
  return make({.kind = NK::Fun, .fun = f, .a = std::move(a)});
}

bool node_equal(const NodePtr& a, const NodePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NK::Rational: return a->value == b->value;
    case NK::ChartVar: return a->var == b->var;
    case NK::Param: return a->name == b->name;
    case NK::Pi:
    case NK::Sqrt2:
    case NK::Sqrt3: return true;
    case NK::Neg: return node_equal(a->a, b->a);
    case NK::Pow: return a->exponent == b->exponent && node_equal(a->a, b->a);
    case NK::Fun: return a->fun == b->fun && node_equal(a->a, b->a);
    default:
      return node_equal(a->a, b->a) && node_equal(a->b, b->b);
  }
}

}  // namespace detail

using detail::NK;
using detail::Node;
using detail::NodePtr;

ScalarExpr::ScalarExpr() : node_(detail::mk_rational(Rat(0))) {}

ScalarExpr ScalarExpr::wrap(NodePtr n) {
  ScalarExpr e;
  e.node_ = std::move(n);
  return e;
}

ScalarExpr ScalarExpr::rational(Rat r) { return wrap(detail::mk_rational(std::move(r))); }
ScalarExpr ScalarExpr::integer(long long n) { return wrap(detail::mk_rational(Rat(n))); }
ScalarExpr ScalarExpr::variable(Var v) { return wrap(detail::mk_var(v)); }
ScalarExpr ScalarExpr::parameter(std::string name) {
  return wrap(detail::mk_param(std::move(name)));
}
ScalarExpr ScalarExpr::pi() { return wrap(detail::mk_const(NK::Pi)); }
ScalarExpr ScalarExpr::sqrt2() { return wrap(detail::mk_const(NK::Sqrt2)); }
ScalarExpr ScalarExpr::sqrt3() { return wrap(detail::mk_const(NK::Sqrt3)); }

bool ScalarExpr::is_rational_literal() const { return node_->kind == NK::Rational; }

const Rat* ScalarExpr::as_rational() const {
  return node_->kind == NK::Rational ? &node_->value : nullptr;
}

bool ScalarExpr::is_literal_zero() const {
  return node_->kind == NK::Rational && node_->value == 0;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::wrap(detail::mk_add(a.ptr(), b.ptr()));
}
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::wrap(detail::mk_sub(a.ptr(), b.ptr()));
}
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::wrap(detail::mk_mul(a.ptr(), b.ptr()));
}
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::wrap(detail::mk_div(a.ptr(), b.ptr()));
}
ScalarExpr operator-(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_neg(a.ptr()));
}
ScalarExpr pow(const ScalarExpr& a, unsigned n) {
  return ScalarExpr::wrap(detail::mk_pow(a.ptr(), n));
}
ScalarExpr sin(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_fun(FuncKind::Sin, a.ptr()));
}
ScalarExpr cos(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_fun(FuncKind::Cos, a.ptr()));
}
ScalarExpr exp(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_fun(FuncKind::Exp, a.ptr()));
}
ScalarExpr sinh(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_fun(FuncKind::Sinh, a.ptr()));
}
ScalarExpr cosh(const ScalarExpr& a) {
  return ScalarExpr::wrap(detail::mk_fun(FuncKind::Cosh, a.ptr()));
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

NodePtr d(const NodePtr& n, Var v) {
  using detail::mk_add;
  using detail::mk_div;
  using detail::mk_fun;
  using detail::mk_mul;
  using detail::mk_neg;
  using detail::mk_pow;
  using detail::mk_rational;
  using detail::mk_sub;
  switch (n->kind) {
    case NK::Rational:
    case NK::Param:
    case NK::Pi:
    case NK::Sqrt2:
    case NK::Sqrt3:
      return mk_rational(Rat(0));
    case NK::ChartVar:
      return mk_rational(Rat(n->var == v ? 1 : 0));
    case NK::Add: return mk_add(d(n->a, v), d(n->b, v));
    case NK::Sub: return mk_sub(d(n->a, v), d(n->b, v));
    case NK::Neg: return mk_neg(d(n->a, v));
    case NK::Mul:
      return mk_add(mk_mul(d(n->a, v), n->b), mk_mul(n->a, d(n->b, v)));
    case NK::Div:
      // (a/b)' = (a'b - ab') / b^2
      return mk_div(mk_sub(mk_mul(d(n->a, v), n->b), mk_mul(n->a, d(n->b, v))),
                    mk_pow(n->b, 2));
    case NK::Pow: {
      NodePtr inner = d(n->a, v);
      NodePtr scale = mk_mul(mk_rational(Rat(n->exponent)), mk_pow(n->a, n->exponent - 1));
      return mk_mul(scale, inner);
    }
    case NK::Fun: {
      NodePtr inner = d(n->a, v);
      NodePtr outer;
      switch (n->fun) {
        case FuncKind::Sin: outer = mk_fun(FuncKind::Cos, n->a); break;
        case FuncKind::Cos: outer = mk_neg(mk_fun(FuncKind::Sin, n->a)); break;
        case FuncKind::Exp: outer = mk_fun(FuncKind::Exp, n->a); break;
        case FuncKind::Sinh: outer = mk_fun(FuncKind::Cosh, n->a); break;
        case FuncKind::Cosh: outer = mk_fun(FuncKind::Sinh, n->a); break;
      }
      return mk_mul(outer, inner);
    }
  }
  return mk_rational(Rat(0));
}

}  // namespace

ScalarExpr diff(const ScalarExpr& e, Var v) { return ScalarExpr::wrap(d(e.ptr(), v)); }

// ---------------------------------------------------------------------------
// Substitution

namespace {

NodePtr subst(const NodePtr& n, const std::array<NodePtr, 4>& repl) {
  switch (n->kind) {
    case NK::Rational:
    case NK::Param:
    case NK::Pi:
    case NK::Sqrt2:
    case NK::Sqrt3:
      return n;
    case NK::ChartVar:
      return repl[static_cast<int>(n->var)];
    case NK::Add: return detail::mk_add(subst(n->a, repl), subst(n->b, repl));
    case NK::Sub: return detail::mk_sub(subst(n->a, repl), subst(n->b, repl));
    case NK::Mul: return detail::mk_mul(subst(n->a, repl), subst(n->b, repl));
    case NK::Div: return detail::mk_div(subst(n->a, repl), subst(n->b, repl));
    case NK::Neg: return detail::mk_neg(subst(n->a, repl));
    case NK::Pow: return detail::mk_pow(subst(n->a, repl), n->exponent);
    case NK::Fun: return detail::mk_fun(n->fun, subst(n->a, repl));
  }
  return n;
}

}  // namespace

ScalarExpr substitute(const ScalarExpr& e, const std::array<ScalarExpr, 4>& repl) {
  std::array<NodePtr, 4> r{repl[0].ptr(), repl[1].ptr(), repl[2].ptr(), repl[3].ptr()};
  return ScalarExpr::wrap(subst(e.ptr(), r));
}

// ---------------------------------------------------------------------------
// Numeric evaluation

namespace {

double eval_node(const Node& n, const Point4& p,
                 const std::map<std::string, double>& params) {
  switch (n.kind) {
    case NK::Rational: return static_cast<double>(n.value);
    case NK::ChartVar: return p[n.var];
    case NK::Param: {
      auto it = params.find(n.name);
      if (it == params.end())
        throw std::out_of_range("unbound parameter: " + n.name);
      return it->second;
    }
    case NK::Pi: return 3.14159265358979323846;
    case NK::Sqrt2: return 1.41421356237309504880;
    case NK::Sqrt3: return 1.73205080756887729353;
    case NK::Add: return eval_node(*n.a, p, params) + eval_node(*n.b, p, params);
    case NK::Sub: return eval_node(*n.a, p, params) - eval_node(*n.b, p, params);
    case NK::Mul: return eval_node(*n.a, p, params) * eval_node(*n.b, p, params);
    case NK::Div: {
      double num = eval_node(*n.a, p, params);
      double den = eval_node(*n.b, p, params);
      if (den == 0.0) throw PoleError("division by zero");
      return num / den;
    }
    case NK::Neg: return -eval_node(*n.a, p, params);
    case NK::Pow: {
      double base = eval_node(*n.a, p, params);
      double acc = 1.0;
      for (unsigned i = 0; i < n.exponent; ++i) acc *= base;
      return acc;
    }
    case NK::Fun: {
      double arg = eval_node(*n.a, p, params);
      switch (n.fun) {
        case FuncKind::Sin: return std::sin(arg);
        case FuncKind::Cos: return std::cos(arg);
        case FuncKind::Exp: return std::exp(arg);
        case FuncKind::Sinh: return std::sinh(arg);
        case FuncKind::Cosh: return std::cosh(arg);
      }
    }
  }
  return 0.0;
}

}  // namespace

double eval(const ScalarExpr& e, const Point4& p,
            const std::map<std::string, double>& params) {
  return eval_node(e.node(), p, params);
}

// ---------------------------------------------------------------------------
// Exact evaluation

namespace {

Rat eval_exact_node(const Node& n, const RatPoint4& p,
                    const std::map<std::string, Rat>& params) {
  switch (n.kind) {
    case NK::Rational: return n.value;
    case NK::ChartVar: return p[n.var];
    case NK::Param: {
      auto it = params.find(n.name);
      if (it == params.end())
        throw NonRationalError("unbound parameter: " + n.name);
      return it->second;
    }
    case NK::Pi: throw NonRationalError("pi is not rational");
    case NK::Sqrt2: throw NonRationalError("sqrt2 is not rational");
    case NK::Sqrt3: throw NonRationalError("sqrt3 is not rational");
    case NK::Add: return eval_exact_node(*n.a, p, params) + eval_exact_node(*n.b, p, params);
    case NK::Sub: return eval_exact_node(*n.a, p, params) - eval_exact_node(*n.b, p, params);
    case NK::Mul: return eval_exact_node(*n.a, p, params) * eval_exact_node(*n.b, p, params);
    case NK::Div: {
      Rat num = eval_exact_node(*n.a, p, params);
      Rat den = eval_exact_node(*n.b, p, params);
      if (den == 0) throw PoleError("division by zero");
      return num / den;
    }
    case NK::Neg: return -eval_exact_node(*n.a, p, params);
    case NK::Pow: {
      Rat base = eval_exact_node(*n.a, p, params);
      Rat acc(1);
      for (unsigned i = 0; i < n.exponent; ++i) acc *= base;
      return acc;
    }
    case NK::Fun: {
      Rat arg = eval_exact_node(*n.a, p, params);
      if (arg != 0)
        throw NonRationalError("function atom of nonzero argument");
      switch (n.fun) {
        case FuncKind::Sin:
        case FuncKind::Sinh: return Rat(0);
        case FuncKind::Cos:
        case FuncKind::Cosh:
        case FuncKind::Exp: return Rat(1);
      }
    }
  }
  return Rat(0);
}

}  // namespace

Rat eval_exact(const ScalarExpr& e, const RatPoint4& p,
               const std::map<std::string, Rat>& params) {
  return eval_exact_node(e.node(), p, params);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Precedence: 1 sum, 2 product, 3 power, 4 atom.
int precedence(const Node& n) {
  switch (n.kind) {
    case NK::Add:
    case NK::Sub: return 1;
    case NK::Mul:
    case NK::Div: return 2;
    case NK::Neg: return 1;
    case NK::Pow: return 3;
    case NK::Rational:
      // Negative literals read as sums, non-integer ones as quotients; both
      // must parenthesize wherever a bare atom is required.
      if (n.value < 0) return 1;
      return denominator(n.value) == 1 ? 4 : 2;
    default: return 4;
  }
}

void render_node(const Node& n, std::ostream& os, int parent_prec);

// Flattens a sum spine into signed terms for "a - b + c" style output.
void render_sum(const Node& n, std::ostream& os, bool negate, bool first) {
  switch (n.kind) {
    case NK::Add:
      render_sum(*n.a, os, negate, first);
      render_sum(*n.b, os, negate, false);
      return;
    case NK::Sub:
      render_sum(*n.a, os, negate, first);
      render_sum(*n.b, os, !negate, false);
      return;
    case NK::Neg:
      render_sum(*n.a, os, !negate, first);
      return;
    case NK::Rational:
      if (n.value < 0) {
        Node pos = n;
        pos.value = -n.value;
        render_sum(pos, os, !negate, first);
        return;
      }
      break;
    default: break;
  }
  if (first) {
    if (negate) os << '-';
  } else {
    os << (negate ? " - " : " + ");
  }
  render_node(n, os, 2);  // sum operands render at product tightness
}

void render_node(const Node& n, std::ostream& os, int parent_prec) {
  int prec = precedence(n);
  bool parens = prec < parent_prec;
  if (parens) os << '(';
  switch (n.kind) {
    case NK::Rational: {
      const Rat& r = n.value;
      os << numerator(r).str();
      if (denominator(r) != 1) os << '/' << denominator(r).str();
      break;
    }
    case NK::ChartVar: os << kVarNames[static_cast<int>(n.var)]; break;
    case NK::Param: os << n.name; break;
    case NK::Pi: os << "pi"; break;
    case NK::Sqrt2: os << "sqrt2"; break;
    case NK::Sqrt3: os << "sqrt3"; break;
    case NK::Add:
    case NK::Sub:
    case NK::Neg:
      render_sum(n, os, false, true);
      break;
    case NK::Mul:
      render_node(*n.a, os, 2);
      os << '*';
      render_node(*n.b, os, 3);  // right factor must not swallow */ chain
      break;
    case NK::Div:
      render_node(*n.a, os, 2);
      os << '/';
      render_node(*n.b, os, 3);
      break;
    case NK::Pow:
      render_node(*n.a, os, 4);
      os << '^' << n.exponent;
      break;
    case NK::Fun:
      os << kFuncNames[static_cast<int>(n.fun)] << '(';
      render_node(*n.a, os, 0);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

}  // namespace

std::string render(const ScalarExpr& e) {
  std::ostringstream os;
  render_node(e.node(), os, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  bool allow_params = false;

  [[noreturn]] void fail(const std::string& what, std::size_t at) {
    throw ParseError(what + " at offset " + std::to_string(at), at);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = detail::mk_add(lhs, parse_term());
      } else if (accept('-')) {
        lhs = detail::mk_sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = detail::mk_mul(lhs, parse_factor());
      } else if (accept('/')) {
        lhs = detail::mk_div(lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_base();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos;
      if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        fail("expected integer exponent", at);
      unsigned long long n = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        n = n * 10 + static_cast<unsigned long long>(src[pos] - '0');
        if (n > 1000000u) fail("exponent too large", at);
        ++pos;
      }
      return detail::mk_pow(base, static_cast<unsigned>(n));
    }
    return base;
  }

  NodePtr parse_base() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input", pos);
    char c = src[pos];
    if (c == '-') {
      ++pos;
      return detail::mk_neg(parse_base());
    }
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expression();
      skip_ws();
      if (!accept(')')) fail("expected ')'", pos);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  NodePtr parse_rational() {
    std::size_t at = pos;
    std::string digits;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      digits += src[pos++];
    Int num(digits);
    // A '/' directly after an integer literal parses as term-level division
    // and folds to the same rational, so no lookahead is needed here.
    (void)at;
    return detail::mk_rational(Rat(num));
  }

  NodePtr parse_identifier() {
    std::size_t at = pos;
    std::string word;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      word += src[pos++];
    if (word == "x") return detail::mk_var(Var::X);
    if (word == "y") return detail::mk_var(Var::Y);
    if (word == "z") return detail::mk_var(Var::Z);
    if (word == "xi") return detail::mk_var(Var::Xi);
    if (word == "pi") return detail::mk_const(NK::Pi);
    if (word == "sqrt2") return detail::mk_const(NK::Sqrt2);
    if (word == "sqrt3") return detail::mk_const(NK::Sqrt3);
    for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
      if (word == kFuncNames[i]) {
        skip_ws();
        if (!accept('(')) fail("expected '(' after function name", pos);
        NodePtr arg = parse_expression();
        skip_ws();
        if (!accept(')')) fail("expected ')'", pos);
        return detail::mk_fun(static_cast<FuncKind>(i), arg);
      }
    }
    if (allow_params) return detail::mk_param(word);
    fail("unknown identifier '" + word + "'", at);
  }
};

}  // namespace

ScalarExpr parse_expr(std::string_view src, bool allow_params) {
  Parser p{src, 0, allow_params};
  NodePtr root = p.parse_expression();
  p.skip_ws();
  if (p.pos != src.size())
    throw ParseError("trailing input at offset " + std::to_string(p.pos), p.pos);
  return ScalarExpr::wrap(root);
}

// ---------------------------------------------------------------------------
// Symbol collection

namespace {

void collect(const Node& n, std::vector<std::string>& out) {
  switch (n.kind) {
    case NK::ChartVar: {
      std::string name(kVarNames[static_cast<int>(n.var)]);
      for (const auto& s : out)
        if (s == name) return;
      out.push_back(std::move(name));
      return;
    }
    case NK::Param: {
      for (const auto& s : out)
        if (s == n.name) return;
      out.push_back(n.name);
      return;
    }
    case NK::Rational:
    case NK::Pi:
    case NK::Sqrt2:
    case NK::Sqrt3:
      return;
    case NK::Neg:
    case NK::Pow:
    case NK::Fun:
      collect(*n.a, out);
      return;
    default:
      collect(*n.a, out);
      collect(*n.b, out);
      return;
  }
}

}  // namespace

std::vector<std::string> collect_symbols(const ScalarExpr& e) {
  std::vector<std::string> out;
  collect(e.node(), out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace emforms
