#pragma once

// Exact symbolic scalar expressions over the chart (x, y, z, xi).
//
// Expressions are immutable trees of rational constants, chart variables,
// named parameters, the constants pi/sqrt2/sqrt3, arithmetic, integer powers,
// and the function atoms sin/cos/exp/sinh/cosh.  normalize() reduces an
// expression to a canonical polynomial form over function atoms; is_zero()
// decides vanishing symbolically where the normal form reaches, and by
// deterministic numeric sampling otherwise.

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace emforms {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Chart variables, in coordinate order. xi is the time-like coordinate c*t.
enum class Var : int { X = 0, Y = 1, Z = 2, Xi = 3 };

inline constexpr std::array<std::string_view, 4> kVarNames{"x", "y", "z", "xi"};

struct Point4 {
  double x = 0, y = 0, z = 0, xi = 0;
  double operator[](Var v) const {
    switch (v) {
      case Var::X: return x;
      case Var::Y: return y;
      case Var::Z: return z;
      default: return xi;
    }
  }
};

struct RatPoint4 {
  Rat x, y, z, xi;
  const Rat& operator[](Var v) const {
    switch (v) {
      case Var::X: return x;
      case Var::Y: return y;
      case Var::Z: return z;
      default: return xi;
    }
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation hit a pole (division by zero at the sample point).
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact evaluation left the rational domain (function atom of nonzero arg).
class NonRationalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FuncKind : int { Sin = 0, Cos = 1, Exp = 2, Sinh = 3, Cosh = 4 };

inline constexpr std::array<std::string_view, 5> kFuncNames{"sin", "cos", "exp",
                                                            "sinh", "cosh"};

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;
}  // namespace detail

class ScalarExpr {
 public:
  ScalarExpr();  // the zero expression

  static ScalarExpr rational(Rat r);
  static ScalarExpr integer(long long n);
  static ScalarExpr variable(Var v);
  static ScalarExpr parameter(std::string name);
  static ScalarExpr pi();
  static ScalarExpr sqrt2();
  static ScalarExpr sqrt3();

  // Literal rational constant at the root (after construction-time folding)?
  bool is_rational_literal() const;
  // Value if the node is a literal rational constant, nullptr otherwise.
  const Rat* as_rational() const;
  bool is_literal_zero() const;

  const detail::Node& node() const { return *node_; }
  const detail::NodePtr& ptr() const { return node_; }
  static ScalarExpr wrap(detail::NodePtr n);

 private:
  detail::NodePtr node_;
};

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator-(const ScalarExpr& a);
ScalarExpr pow(const ScalarExpr& a, unsigned n);
ScalarExpr sin(const ScalarExpr& a);
ScalarExpr cos(const ScalarExpr& a);
ScalarExpr exp(const ScalarExpr& a);
ScalarExpr sinh(const ScalarExpr& a);
ScalarExpr cosh(const ScalarExpr& a);

inline ScalarExpr operator*(long long k, const ScalarExpr& a) {
  return ScalarExpr::integer(k) * a;
}
inline ScalarExpr operator*(const Rat& k, const ScalarExpr& a) {
  return ScalarExpr::rational(k) * a;
}

// Partial derivative with respect to a chart variable. Parameters are
// treated as constants.
ScalarExpr diff(const ScalarExpr& e, Var v);

// Replace each chart variable by the given expression. Parameters pass
// through untouched.
ScalarExpr substitute(const ScalarExpr& e, const std::array<ScalarExpr, 4>& repl);

// Numeric evaluation. Unbound parameters raise std::out_of_range; division
// by zero raises PoleError.
double eval(const ScalarExpr& e, const Point4& p,
            const std::map<std::string, double>& params = {});

// Exact evaluation over the rationals. Function atoms are admitted only at
// argument exactly zero; anything else raises NonRationalError.
Rat eval_exact(const ScalarExpr& e, const RatPoint4& p,
               const std::map<std::string, Rat>& params = {});

// Canonical textual rendering, parseable by parse_expr.
std::string render(const ScalarExpr& e);

// Strict grammar parser. Accepts chart variables x|y|z|xi, the constants
// pi|sqrt2|sqrt3, rationals, + - * / ^, sin|cos|exp|sinh|cosh, parentheses,
// unary minus. With allow_params, any other identifier becomes a named
// parameter. Errors carry the byte offset of the first offending token.
ScalarExpr parse_expr(std::string_view src, bool allow_params = false);

// Canonical form: polynomial normal form over function atoms where the
// expression lies in the supported class, rebuilt as a tree; otherwise the
// same operation applied recursively to maximal supported subtrees.
ScalarExpr normalize(const ScalarExpr& e);

// True if the two expressions normalize to structurally identical trees.
bool identical_normal_form(const ScalarExpr& a, const ScalarExpr& b);

enum class ZeroKind { SymbolicZero, NumericZero, NonZero, Indeterminate };

inline constexpr std::string_view zero_kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::SymbolicZero: return "SymbolicZero";
    case ZeroKind::NumericZero: return "NumericZero";
    case ZeroKind::NonZero: return "NonZero";
    default: return "Indeterminate";
  }
}

struct ZeroVerdict {
  ZeroKind kind = ZeroKind::SymbolicZero;
  double tolerance = 0.0;                   // NumericZero
  std::map<std::string, double> witness;    // NonZero: sample assignment
  double witness_value = 0.0;               // NonZero: residual value there
  bool zero() const {
    return kind == ZeroKind::SymbolicZero || kind == ZeroKind::NumericZero;
  }
};

struct ZeroOptions {
  bool numeric_only = false;
  int samples = 16;
  double tolerance = 1e-9;
};

// Decides whether e vanishes identically. SymbolicZero when the normal form
// is the zero polynomial; otherwise samples every symbol uniformly in
// [-2, 2] at a fixed seed: any |value| > tolerance yields NonZero with the
// witness, all samples within tolerance yields NumericZero, and all samples
// landing on poles yields Indeterminate.
ZeroVerdict is_zero(const ScalarExpr& e, const ZeroOptions& opts = {});

// Worst verdict of a family of residual components: NonZero dominates
// Indeterminate dominates NumericZero dominates SymbolicZero.
ZeroVerdict aggregate_verdicts(const std::vector<ZeroVerdict>& parts);

// Symbols appearing in e: chart variables by name plus parameter names.
std::vector<std::string> collect_symbols(const ScalarExpr& e);

}  // namespace emforms
