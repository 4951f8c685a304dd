#pragma once

// Exterior algebra over R^3 and R^4 with ScalarExpr coefficients.
//
// A p-form or p-vector is a sparse map from strictly increasing index
// tuples (1-based) to coefficients.  Covariant and contravariant objects
// are distinct types; mixing them is a compile error except through the
// pairing and insertion operations that contract them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "emforms/expr.hpp"

namespace emforms {

// Strictly increasing tuple of 1-based axis indices, length 0..4.
class IndexTuple {
 public:
  IndexTuple() = default;
  IndexTuple(std::initializer_list<int> idx);

  // Sorts arbitrary indices into a tuple with the permutation sign; returns
  // nullopt on a repeated index.
  static std::optional<std::pair<IndexTuple, int>> from_unsorted(
      const std::vector<int>& idx);

  int size() const { return len_; }
  int operator[](int i) const { return idx_[i]; }
  bool contains(int axis) const;

  // Tuple with idx_[pos] removed.
  IndexTuple erased(int pos) const;
  // Tuple with axis inserted in order, plus (-1)^position; nullopt if present.
  std::optional<std::pair<IndexTuple, int>> inserted(int axis) const;
  // Indices of [1..dim] not in this tuple, in increasing order.
  IndexTuple complement(int dim) const;
  // True if every index of sub occurs in this tuple.
  bool contains_all(const IndexTuple& sub) const;
  // Removes the indices of sub; sign is the parity of sorting (sub, rest)
  // back into this tuple.  Requires contains_all(sub).
  std::pair<IndexTuple, int> removed(const IndexTuple& sub) const;

  std::string to_string() const;  // "12", "134", "" for the empty tuple
  auto operator<=>(const IndexTuple&) const = default;

 private:
  std::uint8_t len_ = 0;
  std::array<std::uint8_t, 4> idx_{};
};

namespace detail {
struct FormTag;
struct VectorTag;

// Shared sparse container; Tag distinguishes co- and contravariant objects.
template <typename Tag>
class Graded {
 public:
  Graded(int dim, int grade);

  int dim() const { return dim_; }
  int grade() const { return grade_; }

  const ScalarExpr& coeff(const IndexTuple& t) const;
  void set(const IndexTuple& t, ScalarExpr c);
  void add(const IndexTuple& t, const ScalarExpr& c);
  const std::map<IndexTuple, ScalarExpr>& terms() const { return terms_; }

  Graded operator+(const Graded& o) const;
  Graded operator-(const Graded& o) const;
  Graded operator-() const;
  Graded scaled(const ScalarExpr& k) const;

  // Normalizes every coefficient, dropping those that normalize to zero.
  Graded normalized() const;
  // Zero verdicts of all coefficients (present or not, the absent ones are
  // zero and excluded); aggregate with aggregate_verdicts.
  std::vector<ZeroVerdict> component_verdicts(const ZeroOptions& opts = {}) const;
  ZeroVerdict is_zero_verdict(const ZeroOptions& opts = {}) const;

 private:
  int dim_;
  int grade_;
  std::map<IndexTuple, ScalarExpr> terms_;  // literal zeros pruned on entry
};
}  // namespace detail

using PForm = detail::Graded<detail::FormTag>;
using PVector = detail::Graded<detail::VectorTag>;

// Exterior products. Graded anticommutative, associative.
PForm wedge(const PForm& a, const PForm& b);
PVector wedge(const PVector& a, const PVector& b);

// Exterior derivative; raises the grade by one, d(d(a)) == 0.
PForm exterior_derivative(const PForm& a);

// Full contraction of a p-form with a p-vector (sum over increasing tuples).
ScalarExpr pairing(const PForm& a, const PVector& t);

// Interior products.  insert_vector is i(x) on forms; insert_covector the
// mirror i(alpha) on multivectors.  insert_multi contracts a q-vector into a
// p-form (grade p-q; the zero form of grade 0 when q > p), composing as
// i(x_q) o ... o i(x_1) on decomposables; insert_multi_covector mirrors it.
PForm insert_vector(const PVector& x, const PForm& a);
PVector insert_covector(const PForm& alpha, const PVector& t);
PForm insert_multi(const PVector& t, const PForm& a);
PVector insert_multi_covector(const PForm& a, const PVector& t);

// R^2-valued forms with components along the fixed frame (eps1, eps2).
struct VValuedForm {
  PForm c1, c2;
  VValuedForm operator+(const VValuedForm& o) const { return {c1 + o.c1, c2 + o.c2}; }
  VValuedForm operator-(const VValuedForm& o) const { return {c1 - o.c1, c2 - o.c2}; }
};

// The complex structure of R^2 pushed to components: (a, b) -> (-b, a).
VValuedForm istar(const VValuedForm& w);

// Wedge of two R^2-valued forms against the area form eps1 ^ eps2:
// vwedge(a, b) = a1 ^ b2 - a2 ^ b1.
PForm vwedge(const VValuedForm& a, const VValuedForm& b);

// Convenience builders.
PForm zero_form(int dim, int grade);
PVector zero_vector(int dim, int grade);
PForm basis_form(int dim, std::initializer_list<int> idx);     // dx^i ^ ...
PVector basis_vector(int dim, std::initializer_list<int> idx); // d_i ^ ...
PForm scalar_form(int dim, ScalarExpr f);                      // grade 0
PForm volume_form(int dim);                                    // omega* on R^4, vol on R^3
PVector volume_vector(int dim);

// Identification of R^3 triples with 1-forms (component k of the triple is
// the coefficient of dx^k) and back.
PForm oneform_from_triple(const std::array<ScalarExpr, 3>& v);
std::array<ScalarExpr, 3> triple_from_oneform(const PForm& a);

}  // namespace emforms
