#pragma once

// Conformal symmetry of the complex structure: Lie derivatives along vector
// fields, the first-order system characterizing the symmetry algebra, its
// fifteen generators, their closed-form flows, and flow/pullback checks.

#include <map>
#include <string>
#include <vector>

#include "emforms/structures.hpp"

namespace emforms {

struct VectorField4 {
  std::array<ScalarExpr, 4> comp;
};

// Cartan formula: i(X) d a + d i(X) a.
PForm lie_derivative(const VectorField4& x, const PForm& a);

ScalarExpr divergence4(const VectorField4& x);

VectorField4 commutator(const VectorField4& x, const VectorField4& y);

// Increasing 2-tuples in the fixed order 12, 13, 23, 14, 24, 34.
const std::array<IndexTuple, 6>& bivector_basis();

using Mat6Expr = std::array<std::array<ScalarExpr, 6>, 6>;

// Entries (over increasing pair indices) of L_X H + div(X) H, where H is
// the constant contravariant tensor with the grade-2 metric signature.
// Vanishing identically is the conformal symmetry condition.
Mat6Expr metric2_conformal_residual(const VectorField4& x);

// Entries of L_X T for the complex structure as a constant (2,2)-tensor;
// vanishes exactly when the metric residual above does.
Mat6Expr complex_structure_lie(const VectorField4& x);

// The equivalent first-order system: six trace-balance equations
// 2(dX^i/dx^i + dX^j/dx^j) = div X over index pairs in basis order, then
// six off-diagonal equations dX^j/dx^i +/- dX^i/dx^j = 0 (the sign follows
// the grade-1 metric signs), as residual expressions.
std::array<ScalarExpr, 12> conformal_pde_residuals(const VectorField4& x);

struct NamedGenerator {
  std::string name;
  VectorField4 field;
};

// The fifteen symmetry generators: four translations, three rotations,
// three boosts, the dilatation, four special conformal fields.
const std::vector<NamedGenerator>& conformal_generators();

// Closed-form flows.  A FlowMap sends the chart point to its image,
// componentwise as expressions in (x, y, z, xi).
struct FlowMap {
  std::array<ScalarExpr, 4> target;
};

enum class Plane { XY, XZ, YZ };
enum class Axis { X, Y, Z };

FlowMap flow_translation(const std::array<ScalarExpr, 4>& a);
FlowMap flow_rotation(Plane p, const ScalarExpr& s);
FlowMap flow_boost(Axis a, const ScalarExpr& s);
FlowMap flow_dilatation(const ScalarExpr& s);
// Rational special-conformal flow x -> (x + d Q(x)) / denom; throws nothing
// here, but exact application at a point with vanishing denominator raises
// SingularFlowError.
FlowMap flow_special_conformal(const std::array<ScalarExpr, 4>& d);

class SingularFlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact application at a rational point.  Raises SingularFlowError on a
// vanishing denominator and NonRationalError if the map leaves the rational
// domain (trigonometric flows at nonzero parameter).
RatPoint4 apply_flow_exact(const FlowMap& m, const RatPoint4& p);
Point4 apply_flow(const FlowMap& m, const Point4& p);

// Fourth-order Runge-Kutta integration of dx/ds = gen(x).
Point4 integrate_flow(const VectorField4& gen, const Point4& p, double s,
                      double step = 1e-3);

// Max componentwise discrepancy between the closed-form image (flow built
// at parameter s) and the integrated image.
double flow_consistency(const VectorField4& gen, const FlowMap& flow_at_s, double s,
                        const Point4& p, double step = 1e-3);

// Pullback of a p-form along the map: substituted coefficients wedge the
// differentials of the target components.
PForm pullback(const FlowMap& m, const PForm& a);

}  // namespace emforms
