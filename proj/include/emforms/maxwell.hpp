#pragma once

// Vacuum Maxwell equations in three equivalent shapes: the first-order curl
// system on R^3 with time parameter xi, the R^2-valued 1-form system, and
// the closed-pair system dF = 0, d(complex_structure F) = 0 on R^4.  Plus
// duality rotations, their invariants, energy-momentum quantities, and the
// gradient-to-3-form map whose closure is the wave operator.

#include <array>

#include "emforms/structures.hpp"

namespace emforms {

// Field components as functions of (x, y, z, xi).
struct EMField3 {
  std::array<ScalarExpr, 3> electric, magnetic;
};

// omega = E (x) eps1 + B (x) eps2 as an R^2-valued 1-form on R^3.
VValuedForm omega_from_field(const EMField3& f);
EMField3 field_from_omega(const VValuedForm& w);

// Componentwise d/dxi.
PForm partial_xi(const PForm& a);

struct FirstOrderResiduals3 {
  std::array<ScalarExpr, 3> faraday;  // curl E + dB/dxi
  ScalarExpr div_b;
  std::array<ScalarExpr, 3> ampere;   // curl B - dE/dxi
  ScalarExpr div_e;
};
FirstOrderResiduals3 maxwell_residual_3d(const EMField3& f);

// 2x2 rational matrix acting on the R^2 value frame.
struct Mat2 {
  Rat a11, a12, a21, a22;
  Rat det() const { return a11 * a22 - a12 * a21; }
};

// Canonical complex structure of R^2 in matrix form: (a, b) -> (-b, a).
Mat2 istar_matrix();
// Conjugated structure psi istar psi^-1 for an invertible frame change.
Mat2 conjugate_istar(const Mat2& psi);
// Componentwise frame action (M w)^a = M^a_b w^b.
VValuedForm apply_frame(const Mat2& m, const VValuedForm& w);

struct VValuedResiduals {
  VValuedForm first_order;  // star3(d w) - d/dxi (I w); pair of 1-forms
  VValuedForm coclosed;     // componentwise codifferential; pair of 0-forms
};
VValuedResiduals maxwell_residual_r2(const VValuedForm& w);
// Same system with the complex structure replaced by an arbitrary matrix
// (used to verify frame covariance with structure = conjugate_istar(psi)).
VValuedResiduals maxwell_residual_r2_structure(const VValuedForm& w, const Mat2& structure);

// Duality rotation by an angle expression:
// E~ = E cos a - B sin a, B~ = E sin a + B cos a.
EMField3 duality_rotate(const EMField3& f, const ScalarExpr& alpha);

// General linear mix (E, B) -> (m11 E + m12 B, m21 E + m22 B).
EMField3 linear_mix(const EMField3& f, const std::array<std::array<ScalarExpr, 2>, 2>& m);

struct FieldInvariants {
  ScalarExpr first;   // B.B - E.E
  ScalarExpr second;  // 2 E.B
};
FieldInvariants invariants(const EMField3& f);

// Closed-form transformation of the invariants under a duality rotation:
// first' = cos(2a) first + sin(2a) second,
// second' = -sin(2a) first + cos(2a) second.
FieldInvariants rotated_invariants_law(const FieldInvariants& inv, const ScalarExpr& alpha);

struct EnergyMomentum {
  ScalarExpr density;               // (E.E + B.B) / (8 pi)
  std::array<ScalarExpr, 3> flux;   // (E x B) / (4 pi)
};
EnergyMomentum energy_momentum(const EMField3& f);

// The 2-form on R^4 carrying the field, and its companion under the
// complex structure, both from the fixed component dictionary.
PForm faraday_form(const EMField3& f);
PForm faraday_companion(const EMField3& f);
EMField3 field_from_faraday(const PForm& f2);

struct SecondOrderResiduals4 {
  PForm closure;            // dF
  PForm companion_closure;  // d(complex_structure F)
};
SecondOrderResiduals4 maxwell_residual_4d(const PForm& f2);

// Omega = F1 (x) eps1 + F2 (x) eps2 with equivariance defects
// complex_structure(F1) - F2 and complex_structure(F2) + F1; a failing input
// pair is flagged through the defects, not rejected.
struct EquivariantPair {
  VValuedForm omega;
  PForm defect1, defect2;
  VValuedForm closure;  // (dF1, dF2)
};
EquivariantPair equivariant_omega(const PForm& f1, const PForm& f2);
EquivariantPair equivariant_omega(const PForm& f1);  // companion partner

// Gradient companion map on 1-forms (equals -hodge_star there); composing
// d o companion o d on a scalar yields the wave operator times the volume.
PForm gradient_companion(const PForm& oneform);
PForm wave_residual_form(const ScalarExpr& u);   // d(companion(d u))
ScalarExpr wave_coefficient(const ScalarExpr& u);  // its volume coefficient

}  // namespace emforms
