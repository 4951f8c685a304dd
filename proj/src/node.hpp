#pragma once

// Internal AST node shared by the expression front end and the normal form.

#include <memory>
#include <string>

#include "emforms/expr.hpp"

namespace emforms::detail {

enum class NK : int {
  Rational,
  ChartVar,
  Param,
  Pi,
  Sqrt2,
  Sqrt3,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,
  Fun,
};

struct Node {
  NK kind = NK::Rational;
  Rat value;                     // Rational
  Var var = Var::X;              // ChartVar
  std::string name;              // Param
  unsigned exponent = 0;         // Pow
  FuncKind fun = FuncKind::Sin;  // Fun
  NodePtr a, b;
};

NodePtr mk_rational(Rat r);
NodePtr mk_var(Var v);
NodePtr mk_param(std::string name);
NodePtr mk_const(NK which);  // Pi, Sqrt2, Sqrt3
NodePtr mk_add(NodePtr a, NodePtr b);
NodePtr mk_sub(NodePtr a, NodePtr b);
NodePtr mk_mul(NodePtr a, NodePtr b);
NodePtr mk_div(NodePtr a, NodePtr b);
NodePtr mk_neg(NodePtr a);
NodePtr mk_pow(NodePtr a, unsigned n);
NodePtr mk_fun(FuncKind f, NodePtr a);

bool is_zero_literal(const NodePtr& n);
bool is_rat_literal(const NodePtr& n);
bool node_equal(const NodePtr& a, const NodePtr& b);

}  // namespace emforms::detail
