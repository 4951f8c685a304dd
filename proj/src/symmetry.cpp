#include "emforms/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace emforms {

namespace {

PVector vector_field_multivector(const VectorField4& x) {
  PVector v(4, 1);
  for (int mu = 1; mu <= 4; ++mu) {
    v.add(IndexTuple{static_cast<uint8_t>(mu)}, x.comp[size_t(mu - 1)]);
  }
  return v;
}

ScalarExpr d_comp(const VectorField4& x, int mu, int sigma) {
  return diff(x.comp[size_t(mu - 1)], static_cast<Var>(sigma - 1));
}

// Sign of the ordered pair (m, n) relative to its increasing tuple; zero on
// a repeated index.
int pair_parity(int m, int n) {
  if (m == n) return 0;
  return m < n ? 1 : -1;
}

// Component (m n, a b) of the constant contravariant tensor whose increasing
// pair diagonal carries the grade-2 signature (1, 1, 1, -1, -1, -1).
int h2_component(int m, int n, int a, int b) {
  int s1 = pair_parity(m, n);
  int s2 = pair_parity(a, b);
  if (s1 == 0 || s2 == 0) return 0;
  if (std::min(m, n) != std::min(a, b) || std::max(m, n) != std::max(a, b)) return 0;
  int sig = std::max(m, n) == 4 ? -1 : 1;
  return sig * s1 * s2;
}

const std::array<IndexTuple, 6>& basis6() { return bivector_basis(); }

int basis_index(int lo, int hi) {
  const auto& b = basis6();
  for (size_t i = 0; i < 6; ++i) {
    if (b[i][0] == lo && b[i][1] == hi) return static_cast<int>(i) + 1;
  }
  throw std::logic_error("bad pair");
}

// Component T^{mn}_{ab} of the complex structure as a (2,2)-tensor: the
// basis pair i upstairs pairs with basis pair 7-i downstairs, weighted by
// (-1)^i, extended antisymmetrically in each slot.
int phi_tensor_component(int m, int n, int a, int b) {
  int s1 = pair_parity(m, n);
  int s2 = pair_parity(a, b);
  if (s1 == 0 || s2 == 0) return 0;
  int i = basis_index(std::min(m, n), std::max(m, n));
  int j = basis_index(std::min(a, b), std::max(a, b));
  if (j != 7 - i) return 0;
  int sign = (i % 2 == 0) ? 1 : -1;
  return sign * s1 * s2;
}

ScalarExpr zero_expr() { return ScalarExpr::integer(0); }

}  // namespace

PForm lie_derivative(const VectorField4& x, const PForm& a) {
  PVector v = vector_field_multivector(x);
  PForm first = insert_vector(v, exterior_derivative(a));
  // On functions the insertion term is identically zero and carries no
  // meaningful grade; the Lie derivative is the directional derivative.
  if (a.grade() == 0) return first;
  return first + exterior_derivative(insert_vector(v, a));
}

ScalarExpr divergence4(const VectorField4& x) {
  ScalarExpr s = zero_expr();
  for (int mu = 1; mu <= 4; ++mu) s = s + d_comp(x, mu, mu);
  return s;
}

VectorField4 commutator(const VectorField4& x, const VectorField4& y) {
  VectorField4 out{{zero_expr(), zero_expr(), zero_expr(), zero_expr()}};
  for (int mu = 1; mu <= 4; ++mu) {
    ScalarExpr s = zero_expr();
    for (int nu = 1; nu <= 4; ++nu) {
      s = s + x.comp[size_t(nu - 1)] * d_comp(y, mu, nu) -
          y.comp[size_t(nu - 1)] * d_comp(x, mu, nu);
    }
    out.comp[size_t(mu - 1)] = s;
  }
  return out;
}

const std::array<IndexTuple, 6>& bivector_basis() {
  static const std::array<IndexTuple, 6> kBasis = {
      IndexTuple{1, 2}, IndexTuple{1, 3}, IndexTuple{2, 3},
      IndexTuple{1, 4}, IndexTuple{2, 4}, IndexTuple{3, 4}};
  return kBasis;
}

Mat6Expr metric2_conformal_residual(const VectorField4& x) {
  ScalarExpr div = divergence4(x);
  Mat6Expr out;
  const auto& b = basis6();
  for (size_t p = 0; p < 6; ++p) {
    int mu = b[p][0], nu = b[p][1];
    for (size_t q = 0; q < 6; ++q) {
      int al = b[q][0], be = b[q][1];
      // Constant tensor: L_X acts purely through the four derivative slots.
      ScalarExpr r = zero_expr();
      for (int sg = 1; sg <= 4; ++sg) {
        if (int c = h2_component(sg, nu, al, be); c != 0)
          r = r - Rat(c) * d_comp(x, mu, sg);
        if (int c = h2_component(mu, sg, al, be); c != 0)
          r = r - Rat(c) * d_comp(x, nu, sg);
        if (int c = h2_component(mu, nu, sg, be); c != 0)
          r = r - Rat(c) * d_comp(x, al, sg);
        if (int c = h2_component(mu, nu, al, sg); c != 0)
          r = r - Rat(c) * d_comp(x, be, sg);
      }
      if (int c = h2_component(mu, nu, al, be); c != 0) r = r + Rat(c) * div;
      out[p][q] = r;
    }
  }
  return out;
}

Mat6Expr complex_structure_lie(const VectorField4& x) {
  Mat6Expr out;
  const auto& b = basis6();
  for (size_t p = 0; p < 6; ++p) {
    int mu = b[p][0], nu = b[p][1];
    for (size_t q = 0; q < 6; ++q) {
      int al = b[q][0], be = b[q][1];
      ScalarExpr r = zero_expr();
      for (int sg = 1; sg <= 4; ++sg) {
        // Contravariant slots pick up -T d X, covariant slots +T d X.
        if (int c = phi_tensor_component(sg, nu, al, be); c != 0)
          r = r - Rat(c) * d_comp(x, mu, sg);
        if (int c = phi_tensor_component(mu, sg, al, be); c != 0)
          r = r - Rat(c) * d_comp(x, nu, sg);
        if (int c = phi_tensor_component(mu, nu, sg, be); c != 0)
          r = r + Rat(c) * d_comp(x, sg, al);
        if (int c = phi_tensor_component(mu, nu, al, sg); c != 0)
          r = r + Rat(c) * d_comp(x, sg, be);
      }
      out[p][q] = r;
    }
  }
  return out;
}

std::array<ScalarExpr, 12> conformal_pde_residuals(const VectorField4& x) {
  ScalarExpr div = divergence4(x);
  const auto& b = basis6();
  std::array<ScalarExpr, 12> out = {zero_expr(), zero_expr(), zero_expr(), zero_expr(),
                                    zero_expr(), zero_expr(), zero_expr(), zero_expr(),
                                    zero_expr(), zero_expr(), zero_expr(), zero_expr()};
  for (size_t p = 0; p < 6; ++p) {
    int i = b[p][0], j = b[p][1];
    out[p] = Rat(2) * (d_comp(x, i, i) + d_comp(x, j, j)) - div;
  }
  for (size_t p = 0; p < 6; ++p) {
    int i = b[p][0], j = b[p][1];
    // Mixed space pair: symmetric sum; space-time pair: hyperbolic difference.
    if (j == 4) {
      out[6 + p] = d_comp(x, j, i) - d_comp(x, i, j);
    } else {
      out[6 + p] = d_comp(x, j, i) + d_comp(x, i, j);
    }
  }
  return out;
}

namespace {

ScalarExpr chart(Var v) { return ScalarExpr::variable(v); }

// Quadratic form with the grade-1 signature: -x^2 - y^2 - z^2 + xi^2.
ScalarExpr quadratic_form(const std::array<ScalarExpr, 4>& p) {
  return pow(p[3], 2) - pow(p[0], 2) - pow(p[1], 2) - pow(p[2], 2);
}

// Signed pairing -x a - y b - z c + xi d of a chart point with a parameter
// vector.
ScalarExpr signed_pairing(const std::array<ScalarExpr, 4>& p,
                          const std::array<ScalarExpr, 4>& d) {
  return p[3] * d[3] - p[0] * d[0] - p[1] * d[1] - p[2] * d[2];
}

VectorField4 constant_field(int axis) {
  VectorField4 f{{ScalarExpr::integer(0), ScalarExpr::integer(0),
                  ScalarExpr::integer(0), ScalarExpr::integer(0)}};
  f.comp[size_t(axis)] = ScalarExpr::integer(1);
  return f;
}

VectorField4 rotation_field(Var a, Var b) {
  // Flow x_a' = x_a cos s + x_b sin s differentiates to x_b d/dx_a - x_a d/dx_b.
  VectorField4 f{{ScalarExpr::integer(0), ScalarExpr::integer(0),
                  ScalarExpr::integer(0), ScalarExpr::integer(0)}};
  f.comp[size_t(a)] = chart(b);
  f.comp[size_t(b)] = ScalarExpr::integer(0) - chart(a);
  return f;
}

VectorField4 boost_field(Var a) {
  VectorField4 f{{ScalarExpr::integer(0), ScalarExpr::integer(0),
                  ScalarExpr::integer(0), ScalarExpr::integer(0)}};
  f.comp[size_t(a)] = chart(Var::Xi);
  f.comp[3] = chart(a);
  return f;
}

VectorField4 dilatation_field() {
  return VectorField4{{chart(Var::X), chart(Var::Y), chart(Var::Z), chart(Var::Xi)}};
}

VectorField4 special_conformal_field(int mu) {
  // Q d/dx_mu - 2 lambda_mu x_mu (x^sigma d/dx_sigma), lambda = (-1,-1,-1,1).
  std::array<ScalarExpr, 4> pt = {chart(Var::X), chart(Var::Y), chart(Var::Z),
                                  chart(Var::Xi)};
  ScalarExpr q = quadratic_form(pt);
  long long lam = (mu == 3) ? 1 : -1;
  VectorField4 f{{ScalarExpr::integer(0), ScalarExpr::integer(0),
                  ScalarExpr::integer(0), ScalarExpr::integer(0)}};
  for (int s = 0; s < 4; ++s) {
    ScalarExpr term = (-2 * lam) * (pt[size_t(mu)] * pt[size_t(s)]);
    if (s == mu) term = term + q;
    f.comp[size_t(s)] = term;
  }
  return f;
}

}  // namespace

const std::vector<NamedGenerator>& conformal_generators() {
  static const std::vector<NamedGenerator> kGens = [] {
    std::vector<NamedGenerator> g;
    g.push_back({"translation-x", constant_field(0)});
    g.push_back({"translation-y", constant_field(1)});
    g.push_back({"translation-z", constant_field(2)});
    g.push_back({"translation-xi", constant_field(3)});
    g.push_back({"rotation-xy", rotation_field(Var::X, Var::Y)});
    g.push_back({"rotation-xz", rotation_field(Var::X, Var::Z)});
    g.push_back({"rotation-yz", rotation_field(Var::Y, Var::Z)});
    g.push_back({"boost-x", boost_field(Var::X)});
    g.push_back({"boost-y", boost_field(Var::Y)});
    g.push_back({"boost-z", boost_field(Var::Z)});
    g.push_back({"dilatation", dilatation_field()});
    g.push_back({"special-conformal-x", special_conformal_field(0)});
    g.push_back({"special-conformal-y", special_conformal_field(1)});
    g.push_back({"special-conformal-z", special_conformal_field(2)});
    g.push_back({"special-conformal-xi", special_conformal_field(3)});
    return g;
  }();
  return kGens;
}

FlowMap flow_translation(const std::array<ScalarExpr, 4>& a) {
  return FlowMap{{chart(Var::X) + a[0], chart(Var::Y) + a[1], chart(Var::Z) + a[2],
                  chart(Var::Xi) + a[3]}};
}

FlowMap flow_rotation(Plane p, const ScalarExpr& s) {
  Var a = Var::X, b = Var::Y;
  if (p == Plane::XZ) {
    a = Var::X;
    b = Var::Z;
  } else if (p == Plane::YZ) {
    a = Var::Y;
    b = Var::Z;
  }
  FlowMap m{{chart(Var::X), chart(Var::Y), chart(Var::Z), chart(Var::Xi)}};
  m.target[size_t(a)] = chart(a) * cos(s) + chart(b) * sin(s);
  m.target[size_t(b)] = chart(b) * cos(s) - chart(a) * sin(s);
  return m;
}

FlowMap flow_boost(Axis ax, const ScalarExpr& s) {
  Var a = ax == Axis::X ? Var::X : (ax == Axis::Y ? Var::Y : Var::Z);
  FlowMap m{{chart(Var::X), chart(Var::Y), chart(Var::Z), chart(Var::Xi)}};
  m.target[size_t(a)] = chart(a) * cosh(s) + chart(Var::Xi) * sinh(s);
  m.target[3] = chart(Var::Xi) * cosh(s) + chart(a) * sinh(s);
  return m;
}

FlowMap flow_dilatation(const ScalarExpr& s) {
  ScalarExpr f = exp(s);
  return FlowMap{{chart(Var::X) * f, chart(Var::Y) * f, chart(Var::Z) * f,
                  chart(Var::Xi) * f}};
}

FlowMap flow_special_conformal(const std::array<ScalarExpr, 4>& d) {
  std::array<ScalarExpr, 4> pt = {chart(Var::X), chart(Var::Y), chart(Var::Z),
                                  chart(Var::Xi)};
  ScalarExpr q = quadratic_form(pt);
  ScalarExpr qd = quadratic_form(d);
  ScalarExpr denom = ScalarExpr::integer(1) + Rat(2) * signed_pairing(pt, d) + q * qd;
  FlowMap m{{chart(Var::X), chart(Var::Y), chart(Var::Z), chart(Var::Xi)}};
  for (size_t i = 0; i < 4; ++i) m.target[i] = (pt[i] + d[i] * q) / denom;
  return m;
}

namespace {

Rat& rat_slot(RatPoint4& p, int i) {
  switch (i) {
    case 0: return p.x;
    case 1: return p.y;
    case 2: return p.z;
    default: return p.xi;
  }
}

double& dbl_slot(Point4& p, int i) {
  switch (i) {
    case 0: return p.x;
    case 1: return p.y;
    case 2: return p.z;
    default: return p.xi;
  }
}

}  // namespace

RatPoint4 apply_flow_exact(const FlowMap& m, const RatPoint4& p) {
  RatPoint4 out;
  for (int i = 0; i < 4; ++i) {
    try {
      rat_slot(out, i) = eval_exact(m.target[size_t(i)], p);
    } catch (const PoleError&) {
      throw SingularFlowError("flow map is singular at the given point");
    }
  }
  return out;
}

Point4 apply_flow(const FlowMap& m, const Point4& p) {
  Point4 out;
  for (int i = 0; i < 4; ++i) dbl_slot(out, i) = eval(m.target[size_t(i)], p);
  return out;
}

Point4 integrate_flow(const VectorField4& gen, const Point4& p, double s,
                      double step) {
  auto rhs = [&gen](const Point4& q) {
    Point4 v;
    for (int i = 0; i < 4; ++i) dbl_slot(v, i) = eval(gen.comp[size_t(i)], q);
    return v;
  };
  auto axpy = [](Point4 q, double h, const Point4& v) {
    for (int i = 0; i < 4; ++i) dbl_slot(q, i) += h * v[static_cast<Var>(i)];
    return q;
  };
  double remaining = std::abs(s);
  double sign = s < 0 ? -1.0 : 1.0;
  Point4 q = p;
  while (remaining > 0) {
    double h = sign * std::min(step, remaining);
    Point4 k1 = rhs(q);
    Point4 k2 = rhs(axpy(q, h / 2, k1));
    Point4 k3 = rhs(axpy(q, h / 2, k2));
    Point4 k4 = rhs(axpy(q, h, k3));
    for (int i = 0; i < 4; ++i) {
      auto at = [i](const Point4& r) { return r[static_cast<Var>(i)]; };
      dbl_slot(q, i) += h / 6 * (at(k1) + 2 * at(k2) + 2 * at(k3) + at(k4));
    }
    remaining -= std::abs(h);
  }
  return q;
}

double flow_consistency(const VectorField4& gen, const FlowMap& flow_at_s, double s,
                        const Point4& p, double step) {
  Point4 closed = apply_flow(flow_at_s, p);
  Point4 integrated = integrate_flow(gen, p, s, step);
  double worst = 0;
  for (int i = 0; i < 4; ++i) {
    Var v = static_cast<Var>(i);
    worst = std::max(worst, std::abs(closed[v] - integrated[v]));
  }
  return worst;
}

PForm pullback(const FlowMap& m, const PForm& a) {
  // Differentials of the target components as 1-forms.
  std::array<PForm, 4> dt = {PForm(4, 1), PForm(4, 1), PForm(4, 1), PForm(4, 1)};
  for (size_t k = 0; k < 4; ++k) {
    for (int mu = 1; mu <= 4; ++mu) {
      dt[k].add(IndexTuple{static_cast<uint8_t>(mu)},
                diff(m.target[k], static_cast<Var>(mu - 1)));
    }
  }
  PForm out(4, a.grade());
  for (const auto& [idx, coeff] : a.terms()) {
    PForm piece(4, 0);
    piece.add(IndexTuple{}, substitute(coeff, m.target));
    for (int i = 0; i < idx.size(); ++i) {
      piece = wedge(piece, dt[size_t(idx[i] - 1)]);
    }
    out = out + piece;
  }
  return out;
}

}  // namespace emforms
