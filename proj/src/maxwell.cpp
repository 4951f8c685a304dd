#include "emforms/maxwell.hpp"

#include <stdexcept>

namespace emforms {

namespace {

std::array<ScalarExpr, 3> curl(const std::array<ScalarExpr, 3>& v) {
  return {diff(v[2], Var::Y) - diff(v[1], Var::Z),
          diff(v[0], Var::Z) - diff(v[2], Var::X),
          diff(v[1], Var::X) - diff(v[0], Var::Y)};
}

ScalarExpr divergence3(const std::array<ScalarExpr, 3>& v) {
  return diff(v[0], Var::X) + diff(v[1], Var::Y) + diff(v[2], Var::Z);
}

ScalarExpr dot(const std::array<ScalarExpr, 3>& a, const std::array<ScalarExpr, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<ScalarExpr, 3> cross(const std::array<ScalarExpr, 3>& a,
                                const std::array<ScalarExpr, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

VValuedForm omega_from_field(const EMField3& f) {
  return {oneform_from_triple(f.electric), oneform_from_triple(f.magnetic)};
}

EMField3 field_from_omega(const VValuedForm& w) {
  return {triple_from_oneform(w.c1), triple_from_oneform(w.c2)};
}

PForm partial_xi(const PForm& a) {
  PForm r(a.dim(), a.grade());
  for (const auto& [t, c] : a.terms()) r.set(t, diff(c, Var::Xi));
  return r;
}

FirstOrderResiduals3 maxwell_residual_3d(const EMField3& f) {
  FirstOrderResiduals3 r;
  auto ce = curl(f.electric);
  auto cb = curl(f.magnetic);
  for (int i = 0; i < 3; ++i) {
    auto k = static_cast<std::size_t>(i);
    r.faraday[k] = ce[k] + diff(f.magnetic[k], Var::Xi);
    r.ampere[k] = cb[k] - diff(f.electric[k], Var::Xi);
  }
  r.div_b = divergence3(f.magnetic);
  r.div_e = divergence3(f.electric);
  return r;
}

Mat2 istar_matrix() { return {Rat(0), Rat(-1), Rat(1), Rat(0)}; }

Mat2 conjugate_istar(const Mat2& psi) {
  Rat d = psi.det();
  if (d == 0) throw std::invalid_argument("frame change must be invertible");
  // psi I psi^-1 with I = [[0,-1],[1,0]]
  Mat2 inv{psi.a22 / d, -psi.a12 / d, -psi.a21 / d, psi.a11 / d};
  Mat2 i = istar_matrix();
  Mat2 pi{psi.a11 * i.a11 + psi.a12 * i.a21, psi.a11 * i.a12 + psi.a12 * i.a22,
          psi.a21 * i.a11 + psi.a22 * i.a21, psi.a21 * i.a12 + psi.a22 * i.a22};
  return {pi.a11 * inv.a11 + pi.a12 * inv.a21, pi.a11 * inv.a12 + pi.a12 * inv.a22,
          pi.a21 * inv.a11 + pi.a22 * inv.a21, pi.a21 * inv.a12 + pi.a22 * inv.a22};
}

VValuedForm apply_frame(const Mat2& m, const VValuedForm& w) {
  auto lin = [](const Rat& a, const PForm& u, const Rat& b, const PForm& v) {
    return u.scaled(ScalarExpr::rational(a)) + v.scaled(ScalarExpr::rational(b));
  };
  return {lin(m.a11, w.c1, m.a12, w.c2), lin(m.a21, w.c1, m.a22, w.c2)};
}

VValuedResiduals maxwell_residual_r2_structure(const VValuedForm& w, const Mat2& s) {
  VValuedForm sw = apply_frame(s, w);
  VValuedForm first{star3(exterior_derivative(w.c1)) - partial_xi(sw.c1),
                    star3(exterior_derivative(w.c2)) - partial_xi(sw.c2)};
  VValuedForm co{codifferential3(w.c1), codifferential3(w.c2)};
  return {first, co};
}

VValuedResiduals maxwell_residual_r2(const VValuedForm& w) {
  return maxwell_residual_r2_structure(w, istar_matrix());
}

EMField3 duality_rotate(const EMField3& f, const ScalarExpr& alpha) {
  ScalarExpr c = cos(alpha), s = sin(alpha);
  EMField3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.electric[i] = f.electric[i] * c - f.magnetic[i] * s;
    r.magnetic[i] = f.electric[i] * s + f.magnetic[i] * c;
  }
  return r;
}

EMField3 linear_mix(const EMField3& f, const std::array<std::array<ScalarExpr, 2>, 2>& m) {
  EMField3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.electric[i] = m[0][0] * f.electric[i] + m[0][1] * f.magnetic[i];
    r.magnetic[i] = m[1][0] * f.electric[i] + m[1][1] * f.magnetic[i];
  }
  return r;
}

FieldInvariants invariants(const EMField3& f) {
  return {dot(f.magnetic, f.magnetic) - dot(f.electric, f.electric),
          ScalarExpr::integer(2) * dot(f.electric, f.magnetic)};
}

FieldInvariants rotated_invariants_law(const FieldInvariants& inv, const ScalarExpr& alpha) {
  ScalarExpr two_a = ScalarExpr::integer(2) * alpha;
  ScalarExpr c = cos(two_a), s = sin(two_a);
  return {c * inv.first + s * inv.second, c * inv.second - s * inv.first};
}

EnergyMomentum energy_momentum(const EMField3& f) {
  ScalarExpr eight_pi = ScalarExpr::integer(8) * ScalarExpr::pi();
  ScalarExpr four_pi = ScalarExpr::integer(4) * ScalarExpr::pi();
  EnergyMomentum r;
  r.density = (dot(f.electric, f.electric) + dot(f.magnetic, f.magnetic)) / eight_pi;
  auto s = cross(f.electric, f.magnetic);
  for (std::size_t i = 0; i < 3; ++i) r.flux[i] = s[i] / four_pi;
  return r;
}

PForm faraday_form(const EMField3& f) {
  PForm r(4, 2);
  r.set(IndexTuple{1, 2}, f.magnetic[2]);
  r.set(IndexTuple{1, 3}, -f.magnetic[1]);
  r.set(IndexTuple{2, 3}, f.magnetic[0]);
  r.set(IndexTuple{1, 4}, f.electric[0]);
  r.set(IndexTuple{2, 4}, f.electric[1]);
  r.set(IndexTuple{3, 4}, f.electric[2]);
  return r;
}

PForm faraday_companion(const EMField3& f) {
  PForm r(4, 2);
  r.set(IndexTuple{1, 2}, f.electric[2]);
  r.set(IndexTuple{1, 3}, -f.electric[1]);
  r.set(IndexTuple{2, 3}, f.electric[0]);
  r.set(IndexTuple{1, 4}, -f.magnetic[0]);
  r.set(IndexTuple{2, 4}, -f.magnetic[1]);
  r.set(IndexTuple{3, 4}, -f.magnetic[2]);
  return r;
}

EMField3 field_from_faraday(const PForm& f2) {
  if (f2.dim() != 4 || f2.grade() != 2)
    throw std::invalid_argument("expected a 2-form on R^4");
  EMField3 f;
  f.electric = {f2.coeff(IndexTuple{1, 4}), f2.coeff(IndexTuple{2, 4}),
                f2.coeff(IndexTuple{3, 4})};
  f.magnetic = {f2.coeff(IndexTuple{2, 3}), -f2.coeff(IndexTuple{1, 3}),
                f2.coeff(IndexTuple{1, 2})};
  return f;
}

SecondOrderResiduals4 maxwell_residual_4d(const PForm& f2) {
  return {exterior_derivative(f2), exterior_derivative(complex_structure(f2))};
}

EquivariantPair equivariant_omega(const PForm& f1, const PForm& f2) {
  EquivariantPair r{{f1, f2},
                    complex_structure(f1) - f2,
                    complex_structure(f2) + f1,
                    {exterior_derivative(f1), exterior_derivative(f2)}};
  return r;
}

EquivariantPair equivariant_omega(const PForm& f1) {
  return equivariant_omega(f1, complex_structure(f1));
}

PForm gradient_companion(const PForm& oneform) {
  if (oneform.dim() != 4 || oneform.grade() != 1)
    throw std::invalid_argument("gradient_companion needs a 1-form on R^4");
  return -hodge_star(oneform);
}

PForm wave_residual_form(const ScalarExpr& u) {
  return exterior_derivative(gradient_companion(exterior_derivative(scalar_form(4, u))));
}

ScalarExpr wave_coefficient(const ScalarExpr& u) {
  return wave_residual_form(u).coeff(IndexTuple{1, 2, 3, 4});
}

}  // namespace emforms
