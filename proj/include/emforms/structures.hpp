#pragma once

// The algebraic structures on R^4 built from the complex structure on
// 2-forms: the Poincare isomorphisms between multivectors and forms, the
// diagonal index-raising isomorphism and its pseudometrics, the Hodge-star
// extension of the complex structure, and the codifferential.  A Euclidean
// Hodge star on R^3 supports the first-order 3-d formulation.

#include <array>
#include <vector>

#include "emforms/forms.hpp"

namespace emforms {

// Complex structure on 2-forms over R^4 (squares to -identity).
PForm complex_structure(const PForm& f);

// Poincare isomorphisms: p-vectors to (4-p)-forms by insertion into the
// volume form, and p-forms to (4-p)-vectors by insertion into the volume
// vector.  Grade 0 maps scalars to the volume multiple.
PForm poincare_down(const PVector& t);
PVector poincare_up(const PForm& a);

// Same maps computed by the complementary-tuple sign rule
// sign = (-1)^(sum_k (i_k - k)); kept as an independent route for
// cross-validation.
PForm poincare_down_complement(const PVector& t);
PVector poincare_up_complement(const PForm& a);

// Diagonal signs of the index-raising isomorphism on 1-forms: the first of
// the two sign patterns squaring the gradient-to-curl transfer to the wave
// operator, fixed globally.
std::array<int, 4> lambda_signs();  // (-1, -1, -1, 1)

// Index raising / lowering by the diagonal isomorphism extended to grade p
// with product signs lambda_{i_1} ... lambda_{i_p}.
PVector raise_indices(const PForm& a);
PForm lower_indices(const PVector& t);

// Bivector raising -poincare_up(complex_structure(f)); coincides with
// raise_indices on 2-forms.
PVector bivector_raise(const PForm& f);

// Pseudometric on p-forms: metric(a, b) = pairing(b, raise_indices(a)).
ScalarExpr metric(const PForm& a, const PForm& b);

// Diagonal metric signature on grade-p increasing tuples, in basis order.
std::vector<int> metric_signature(int p);

// The 2-form metric read off its defining 4-form identity
// a ^ complex_structure(b) = -metric(a, b) * volume.
ScalarExpr metric2_via_wedge(const PForm& a, const PForm& b);

// Hodge-star extension of the complex structure:
// grade 0: f -> f * volume; grades 1..4: -poincare_down(raise_indices(a)).
// Coincides with complex_structure on 2-forms.
PForm hodge_star(const PForm& a);

// Codifferential on R^4: (-1)^p * inverse-star of d(star a); lowers the
// grade by one.  Requires grade >= 1.
PForm codifferential(const PForm& a);

// Euclidean Hodge star on R^3.
PForm star3(const PForm& a);

// Codifferential on R^3 for 1-forms: -star3(d(star3 a)); equals -div on
// the identified triple.
PForm codifferential3(const PForm& a);

}  // namespace emforms
