#include "emforms/eed.hpp"

namespace emforms {

namespace {

// sigma-indexed contraction a^{mu nu} (da)_{mu nu sigma} with the pair index
// raised by the diagonal sign product, summed over increasing pairs.
PForm raised_pair_contraction(const PForm& a, const PForm& da) {
  const auto lam = lambda_signs();
  PForm r(4, 1);
  for (int sigma = 1; sigma <= 4; ++sigma) {
    ScalarExpr s = ScalarExpr::integer(0);
    for (const auto& [t, c] : a.terms()) {
      int mu = t[0], nu = t[1];
      if (mu == sigma || nu == sigma) continue;
      auto srt = IndexTuple::from_unsorted({mu, nu, sigma});
      const auto& [tup, sgn] = *srt;
      int sig = lam[size_t(mu - 1)] * lam[size_t(nu - 1)] * sgn;
      s = s + Rat(sig) * (c * da.coeff(tup));
    }
    r.add(IndexTuple{sigma}, s);
  }
  return r;
}

}  // namespace

std::array<PForm, 3> eed_residuals_star(const PForm& f) {
  PForm g = complex_structure(f);
  PForm df = exterior_derivative(f);
  PForm dg = exterior_derivative(g);
  return {raised_pair_contraction(f, df), raised_pair_contraction(g, dg),
          raised_pair_contraction(f, dg) + raised_pair_contraction(g, df)};
}

std::array<PForm, 3> eed_residuals_insertion(const PForm& f) {
  PForm g = complex_structure(f);
  PVector raised = bivector_raise(f);
  PVector dual = poincare_up(f);
  PForm df = exterior_derivative(f);
  PForm dg = exterior_derivative(g);
  return {insert_multi(raised, df), insert_multi(dual, dg),
          insert_multi(raised, dg) + insert_multi(dual, df)};
}

std::array<PForm, 3> eed_residuals_wedge(const PForm& f) {
  PForm g = complex_structure(f);
  PForm sdf = hodge_star(exterior_derivative(f));
  PForm sdg = hodge_star(exterior_derivative(g));
  return {wedge(f, sdf), wedge(g, sdg), wedge(f, sdg) + wedge(g, sdf)};
}

PForm generalized_lie(const PVector& t, const PForm& a) {
  if (t.grade() > a.grade()) return zero_form(a.dim(), 0);
  return insert_multi(t, exterior_derivative(a)) +
         exterior_derivative(insert_multi(t, a));
}

LieResiduals eed_residuals_lie(const PForm& f) {
  PForm g = complex_structure(f);
  PVector raised = bivector_raise(f);
  PVector dual = poincare_up(f);
  LieResiduals out{{generalized_lie(raised, f), generalized_lie(dual, g),
                    generalized_lie(raised, g) + generalized_lie(dual, f)},
                   insert_multi(raised, f).coeff(IndexTuple{}),
                   insert_multi(raised, g).coeff(IndexTuple{})};
  return out;
}

EEDResiduals eed_residuals(const PForm& f) {
  return {eed_residuals_star(f), eed_residuals_insertion(f), eed_residuals_lie(f)};
}

}  // namespace emforms
