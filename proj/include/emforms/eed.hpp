#pragma once

// Extended electrodynamics vacuum system in three equivalent formulations,
// together with the generalized Lie derivative along a multivector.

#include "emforms/structures.hpp"

namespace emforms {

// Frozen proportionality constants, determined once by basis expansion and
// pinned by tests: the scalar constraints of the Lie-form system equal
// kInvariant1Factor * (B^2 - E^2) and kInvariant2Factor * (2 E.B).
inline constexpr int kInvariant1Factor = 1;
inline constexpr int kInvariant2Factor = 1;

// sigma-indexed residual 1-forms F^{mu nu} (dF)_{mu nu sigma} for the pairs
// (F, F), (G, G), (F, G) + (G, F) with G the image of F under the complex
// structure.  Indices are raised with the grade-2 metric signature directly;
// no Poincare isomorphism is involved.
std::array<PForm, 3> eed_residuals_star(const PForm& f);

// The same system as interior products: i(DF) dF, i(PF) dG,
// i(DF) dG + i(PF) dF, where DF is the raised bivector computed through the
// Poincare isomorphism and PF its image under it.
std::array<PForm, 3> eed_residuals_insertion(const PForm& f);

// Literal wedge route: F ^ star(dF) and companions, as 3-forms.  Equals the
// grade-1 star residuals pushed up by the grade-1 extension operator
// (pinned by tests).
std::array<PForm, 3> eed_residuals_wedge(const PForm& f);

// Generalized Lie derivative along a q-vector: i(T) d a + d i(T) a, the
// ordinary Lie derivative when q = 1.  Defined as zero when q exceeds the
// grade of a.
PForm generalized_lie(const PVector& t, const PForm& a);

struct LieResiduals {
  std::array<PForm, 3> first_order;  // L_{DF} F, L_{PF} G, L_{DF} G + L_{PF} F
  ScalarExpr constraint_first;       // i(DF) F, a fixed multiple of B^2 - E^2
  ScalarExpr constraint_second;      // i(DF) G, a fixed multiple of 2 E.B
};

LieResiduals eed_residuals_lie(const PForm& f);

struct EEDResiduals {
  std::array<PForm, 3> star;
  std::array<PForm, 3> insertion;
  LieResiduals lie;
};

EEDResiduals eed_residuals(const PForm& f);

}  // namespace emforms
