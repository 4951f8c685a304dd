#include "emforms/structures.hpp"

#include <stdexcept>

namespace emforms {

namespace {

struct PhiEntry {
  IndexTuple from, to;
  int sign;
};

// Action on the 2-form basis (12, 13, 23, 14, 24, 34).
const std::array<PhiEntry, 6>& phi_table() {
  static const std::array<PhiEntry, 6> table{{
      {IndexTuple{1, 2}, IndexTuple{3, 4}, -1},
      {IndexTuple{1, 3}, IndexTuple{2, 4}, +1},
      {IndexTuple{2, 3}, IndexTuple{1, 4}, -1},
      {IndexTuple{1, 4}, IndexTuple{2, 3}, +1},
      {IndexTuple{2, 4}, IndexTuple{1, 3}, -1},
      {IndexTuple{3, 4}, IndexTuple{1, 2}, +1},
  }};
  return table;
}

int tuple_sign_product(const IndexTuple& t) {
  const auto lam = lambda_signs();
  int s = 1;
  for (int i = 0; i < t.size(); ++i) s *= lam[static_cast<std::size_t>(t[i] - 1)];
  return s;
}

// (-1)^(sum_k (i_k - k)), the sign pairing a tuple with its complement.
int complement_sign(const IndexTuple& t) {
  int sum = 0;
  for (int i = 0; i < t.size(); ++i) sum += t[i] - (i + 1);
  return sum % 2 == 0 ? 1 : -1;
}

void require_dim4(int dim, const char* what) {
  if (dim != 4) throw std::invalid_argument(std::string(what) + " requires dim 4");
}

}  // namespace

PForm complex_structure(const PForm& f) {
  require_dim4(f.dim(), "complex_structure");
  if (f.grade() != 2) throw std::invalid_argument("complex_structure needs a 2-form");
  PForm r(4, 2);
  for (const auto& entry : phi_table()) {
    const ScalarExpr& c = f.coeff(entry.from);
    if (c.is_literal_zero()) continue;
    r.add(entry.to, entry.sign == 1 ? c : -c);
  }
  return r;
}

PForm poincare_down(const PVector& t) {
  require_dim4(t.dim(), "poincare_down");
  return insert_multi(t, volume_form(4));
}

PVector poincare_up(const PForm& a) {
  require_dim4(a.dim(), "poincare_up");
  return insert_multi_covector(a, volume_vector(4));
}

PForm poincare_down_complement(const PVector& t) {
  require_dim4(t.dim(), "poincare_down_complement");
  PForm r(4, 4 - t.grade());
  for (const auto& [k, c] : t.terms()) {
    int sign = complement_sign(k);
    r.add(k.complement(4), sign == 1 ? c : -c);
  }
  return r;
}

PVector poincare_up_complement(const PForm& a) {
  require_dim4(a.dim(), "poincare_up_complement");
  PVector r(4, 4 - a.grade());
  for (const auto& [k, c] : a.terms()) {
    int sign = complement_sign(k);
    r.add(k.complement(4), sign == 1 ? c : -c);
  }
  return r;
}

std::array<int, 4> lambda_signs() { return {-1, -1, -1, 1}; }

PVector raise_indices(const PForm& a) {
  require_dim4(a.dim(), "raise_indices");
  PVector r(4, a.grade());
  for (const auto& [t, c] : a.terms()) {
    int s = tuple_sign_product(t);
    r.add(t, s == 1 ? c : -c);
  }
  return r;
}

PForm lower_indices(const PVector& t) {
  require_dim4(t.dim(), "lower_indices");
  PForm r(4, t.grade());
  for (const auto& [k, c] : t.terms()) {
    int s = tuple_sign_product(k);
    r.add(k, s == 1 ? c : -c);
  }
  return r;
}

PVector bivector_raise(const PForm& f) {
  return -poincare_up(complex_structure(f));
}

ScalarExpr metric(const PForm& a, const PForm& b) {
  if (a.grade() != b.grade()) throw std::invalid_argument("metric grade mismatch");
  return pairing(b, raise_indices(a));
}

std::vector<int> metric_signature(int p) {
  // Increasing tuples of length p over {1..4}, basis order: the 2-form
  // order (12, 13, 23, 14, 24, 34), natural order elsewhere.
  std::vector<IndexTuple> basis;
  switch (p) {
    case 0: basis = {IndexTuple{}}; break;
    case 1: basis = {IndexTuple{1}, IndexTuple{2}, IndexTuple{3}, IndexTuple{4}}; break;
    case 2:
      basis = {IndexTuple{1, 2}, IndexTuple{1, 3}, IndexTuple{2, 3},
               IndexTuple{1, 4}, IndexTuple{2, 4}, IndexTuple{3, 4}};
      break;
    case 3:
      basis = {IndexTuple{1, 2, 3}, IndexTuple{1, 2, 4}, IndexTuple{1, 3, 4},
               IndexTuple{2, 3, 4}};
      break;
    case 4: basis = {IndexTuple{1, 2, 3, 4}}; break;
    default: throw std::invalid_argument("metric_signature grade out of range");
  }
  std::vector<int> out;
  out.reserve(basis.size());
  for (const auto& t : basis) out.push_back(tuple_sign_product(t));
  return out;
}

ScalarExpr metric2_via_wedge(const PForm& a, const PForm& b) {
  if (a.grade() != 2 || b.grade() != 2)
    throw std::invalid_argument("metric2_via_wedge needs 2-forms");
  PForm w = wedge(a, complex_structure(b));
  return -w.coeff(IndexTuple{1, 2, 3, 4});
}

PForm hodge_star(const PForm& a) {
  require_dim4(a.dim(), "hodge_star");
  if (a.grade() == 0) return volume_form(4).scaled(a.coeff(IndexTuple{}));
  return -poincare_down(raise_indices(a));
}

namespace {

// star_{4-r} o star_r = c * id on r-forms; c computed once per grade from
// the basis (never hand-entered) and pinned by tests.
int star_composition_constant(int inner_grade) {
  static std::array<int, 5> cache{};
  static std::array<bool, 5> known{};
  if (!known[static_cast<std::size_t>(inner_grade)]) {
    int c = 0;
    // Probe every basis form of the inner grade; the constant must agree.
    std::vector<IndexTuple> basis;
    for (int i1 = 1; i1 <= 4; ++i1) {
      if (inner_grade == 1) basis.push_back(IndexTuple{i1});
      for (int i2 = i1 + 1; i2 <= 4; ++i2) {
        if (inner_grade == 2) basis.push_back(IndexTuple{i1, i2});
        for (int i3 = i2 + 1; i3 <= 4; ++i3) {
          if (inner_grade == 3) basis.push_back(IndexTuple{i1, i2, i3});
          for (int i4 = i3 + 1; i4 <= 4; ++i4)
            if (inner_grade == 4) basis.push_back(IndexTuple{i1, i2, i3, i4});
        }
      }
    }
    if (inner_grade == 0) basis.push_back(IndexTuple{});
    for (const auto& t : basis) {
      PForm b(4, inner_grade);
      b.set(t, ScalarExpr::integer(1));
      PForm back = hodge_star(hodge_star(b)).normalized();
      const Rat* r = back.coeff(t).as_rational();
      if (r == nullptr || (*r != 1 && *r != -1))
        throw std::logic_error("star composition is not +/-identity");
      int ci = *r == 1 ? 1 : -1;
      if (c != 0 && ci != c)
        throw std::logic_error("star composition constant varies over basis");
      c = ci;
    }
    cache[static_cast<std::size_t>(inner_grade)] = c;
    known[static_cast<std::size_t>(inner_grade)] = true;
  }
  return cache[static_cast<std::size_t>(inner_grade)];
}

}  // namespace

PForm codifferential(const PForm& a) {
  require_dim4(a.dim(), "codifferential");
  int p = a.grade();
  if (p < 1) throw std::invalid_argument("codifferential needs grade >= 1");
  int c = star_composition_constant(p - 1);
  PForm r = hodge_star(exterior_derivative(hodge_star(a)));
  int sign = (p % 2 == 0 ? 1 : -1) * c;
  return sign == 1 ? r : -r;
}

PForm star3(const PForm& a) {
  if (a.dim() != 3) throw std::invalid_argument("star3 requires dim 3");
  PForm r(3, 3 - a.grade());
  for (const auto& [t, c] : a.terms()) {
    int sign = complement_sign(t);
    r.add(t.complement(3), sign == 1 ? c : -c);
  }
  return r;
}

PForm codifferential3(const PForm& a) {
  if (a.dim() != 3 || a.grade() != 1)
    throw std::invalid_argument("codifferential3 needs a 1-form on R^3");
  return -star3(exterior_derivative(star3(a)));
}

}  // namespace emforms
