#include "emforms/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace emforms {

// ---------------------------------------------------------------------------
// IndexTuple

IndexTuple::IndexTuple(std::initializer_list<int> idx) {
  if (idx.size() > 4) throw std::invalid_argument("tuple longer than 4");
  int prev = 0;
  for (int i : idx) {
    if (i <= prev) throw std::invalid_argument("tuple not strictly increasing");
    idx_[len_++] = static_cast<std::uint8_t>(i);
    prev = i;
  }
}

std::optional<std::pair<IndexTuple, int>> IndexTuple::from_unsorted(
    const std::vector<int>& idx) {
  if (idx.size() > 4) return std::nullopt;
  std::array<int, 4> buf{};
  int n = static_cast<int>(idx.size());
  for (int i = 0; i < n; ++i) buf[i] = idx[static_cast<std::size_t>(i)];
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (buf[i] == buf[j]) return std::nullopt;
      if (buf[i] > buf[j]) {
        std::swap(buf[i], buf[j]);
        sign = -sign;
      }
    }
  }
  IndexTuple t;
  t.len_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) t.idx_[i] = static_cast<std::uint8_t>(buf[i]);
  return std::make_pair(t, sign);
}

bool IndexTuple::contains(int axis) const {
  for (int i = 0; i < len_; ++i)
    if (idx_[i] == axis) return true;
  return false;
}

IndexTuple IndexTuple::erased(int pos) const {
  IndexTuple t;
  for (int i = 0; i < len_; ++i)
    if (i != pos) t.idx_[t.len_++] = idx_[i];
  return t;
}

std::optional<std::pair<IndexTuple, int>> IndexTuple::inserted(int axis) const {
  if (contains(axis)) return std::nullopt;
  IndexTuple t;
  int sign = 1;
  int i = 0;
  for (; i < len_ && idx_[i] < axis; ++i) {
    t.idx_[t.len_++] = idx_[i];
    sign = -sign;
  }
  t.idx_[t.len_++] = static_cast<std::uint8_t>(axis);
  for (; i < len_; ++i) t.idx_[t.len_++] = idx_[i];
  return std::make_pair(t, sign);
}

IndexTuple IndexTuple::complement(int dim) const {
  IndexTuple t;
  for (int axis = 1; axis <= dim; ++axis)
    if (!contains(axis)) t.idx_[t.len_++] = static_cast<std::uint8_t>(axis);
  return t;
}

bool IndexTuple::contains_all(const IndexTuple& sub) const {
  for (int i = 0; i < sub.size(); ++i)
    if (!contains(sub[i])) return false;
  return true;
}

std::pair<IndexTuple, int> IndexTuple::removed(const IndexTuple& sub) const {
  IndexTuple rest;
  for (int i = 0; i < len_; ++i)
    if (!sub.contains(idx_[i])) rest.idx_[rest.len_++] = idx_[i];
  // Parity of sorting (sub, rest) into this tuple: count pairs (k in sub,
  // i in rest) with i < k; each such pair is one inversion.
  int inversions = 0;
  for (int i = 0; i < sub.size(); ++i)
    for (int j = 0; j < rest.size(); ++j)
      if (rest[j] < sub[i]) ++inversions;
  return {rest, inversions % 2 == 0 ? 1 : -1};
}

std::string IndexTuple::to_string() const {
  std::string s;
  for (int i = 0; i < len_; ++i) s += static_cast<char>('0' + idx_[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Graded container

namespace detail {

template <typename Tag>
Graded<Tag>::Graded(int dim, int grade) : dim_(dim), grade_(grade) {
  if (dim != 3 && dim != 4) throw std::invalid_argument("dim must be 3 or 4");
  if (grade < 0 || grade > dim) throw std::invalid_argument("grade out of range");
}

template <typename Tag>
const ScalarExpr& Graded<Tag>::coeff(const IndexTuple& t) const {
  static const ScalarExpr kZero;
  auto it = terms_.find(t);
  return it == terms_.end() ? kZero : it->second;
}

template <typename Tag>
void Graded<Tag>::set(const IndexTuple& t, ScalarExpr c) {
  if (t.size() != grade_) throw std::invalid_argument("tuple grade mismatch");
  for (int i = 0; i < t.size(); ++i)
    if (t[i] > dim_) throw std::invalid_argument("index out of range");
  if (c.is_literal_zero())
    terms_.erase(t);
  else
    terms_.insert_or_assign(t, std::move(c));
}

template <typename Tag>
void Graded<Tag>::add(const IndexTuple& t, const ScalarExpr& c) {
  if (c.is_literal_zero()) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    set(t, c);
  } else {
    ScalarExpr sum = it->second + c;
    if (sum.is_literal_zero())
      terms_.erase(it);
    else
      it->second = std::move(sum);
  }
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator+(const Graded& o) const {
  if (dim_ != o.dim_ || grade_ != o.grade_)
    throw std::invalid_argument("graded shape mismatch");
  Graded r = *this;
  for (const auto& [t, c] : o.terms_) r.add(t, c);
  return r;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator-(const Graded& o) const {
  return *this + -o;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator-() const {
  Graded r(dim_, grade_);
  for (const auto& [t, c] : terms_) r.set(t, -c);
  return r;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::scaled(const ScalarExpr& k) const {
  Graded r(dim_, grade_);
  for (const auto& [t, c] : terms_) r.set(t, k * c);
  return r;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::normalized() const {
  Graded r(dim_, grade_);
  for (const auto& [t, c] : terms_) r.set(t, normalize(c));
  return r;
}

template <typename Tag>
std::vector<ZeroVerdict> Graded<Tag>::component_verdicts(const ZeroOptions& opts) const {
  std::vector<ZeroVerdict> out;
  out.reserve(terms_.size());
  for (const auto& [t, c] : terms_) out.push_back(is_zero(c, opts));
  return out;
}

template <typename Tag>
ZeroVerdict Graded<Tag>::is_zero_verdict(const ZeroOptions& opts) const {
  return aggregate_verdicts(component_verdicts(opts));
}

template class Graded<FormTag>;
template class Graded<VectorTag>;

}  // namespace detail

// ---------------------------------------------------------------------------
// Products and derivatives

namespace {

template <typename G>
G wedge_impl(const G& a, const G& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge dim mismatch");
  int grade = a.grade() + b.grade();
  if (grade > a.dim()) return G(a.dim(), 0);  // identically zero
  G r(a.dim(), grade);
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      std::vector<int> merged;
      merged.reserve(static_cast<std::size_t>(grade));
      for (int i = 0; i < ta.size(); ++i) merged.push_back(ta[i]);
      for (int i = 0; i < tb.size(); ++i) merged.push_back(tb[i]);
      auto sorted = IndexTuple::from_unsorted(merged);
      if (!sorted) continue;
      auto [t, sign] = *sorted;
      r.add(t, sign == 1 ? ca * cb : -(ca * cb));
    }
  }
  return r;
}

}  // namespace

PForm wedge(const PForm& a, const PForm& b) {
  if (a.grade() + b.grade() > a.dim()) return zero_form(a.dim(), 0);
  return wedge_impl(a, b);
}

PVector wedge(const PVector& a, const PVector& b) {
  if (a.grade() + b.grade() > a.dim()) return zero_vector(a.dim(), 0);
  return wedge_impl(a, b);
}

PForm exterior_derivative(const PForm& a) {
  if (a.grade() == a.dim()) return zero_form(a.dim(), 0);
  PForm r(a.dim(), a.grade() + 1);
  for (const auto& [t, c] : a.terms()) {
    for (int axis = 1; axis <= a.dim(); ++axis) {
      ScalarExpr dc = diff(c, static_cast<Var>(axis - 1));
      if (dc.is_literal_zero()) continue;
      auto ins = t.inserted(axis);
      if (!ins) continue;
      auto [tt, sign] = *ins;
      r.add(tt, sign == 1 ? dc : -dc);
    }
  }
  return r;
}

ScalarExpr pairing(const PForm& a, const PVector& t) {
  if (a.dim() != t.dim() || a.grade() != t.grade())
    throw std::invalid_argument("pairing shape mismatch");
  ScalarExpr sum;
  for (const auto& [tt, c] : a.terms()) {
    const ScalarExpr& tc = t.coeff(tt);
    if (!tc.is_literal_zero()) sum = sum + c * tc;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Insertions

namespace {

// Contraction of a grade-q object t into a grade-p object a over the first
// q slots: (i(t)a)_I = sum_K t^K a_{K,I}.  Works for either variance.
template <typename GOut, typename GIn, typename GMulti>
GOut contract_impl(const GMulti& t, const GIn& a) {
  int q = t.grade(), p = a.grade();
  if (q > p) return GOut(a.dim(), 0);
  GOut r(a.dim(), p - q);
  for (const auto& [A, ac] : a.terms()) {
    for (const auto& [K, tc] : t.terms()) {
      if (!A.contains_all(K)) continue;
      auto [I, sign] = A.removed(K);
      r.add(I, sign == 1 ? tc * ac : -(tc * ac));
    }
  }
  return r;
}

}  // namespace

PForm insert_vector(const PVector& x, const PForm& a) {
  if (x.grade() != 1) throw std::invalid_argument("insert_vector needs grade 1");
  return contract_impl<PForm>(x, a);
}

PVector insert_covector(const PForm& alpha, const PVector& t) {
  if (alpha.grade() != 1) throw std::invalid_argument("insert_covector needs grade 1");
  return contract_impl<PVector>(alpha, t);
}

PForm insert_multi(const PVector& t, const PForm& a) {
  return contract_impl<PForm>(t, a);
}

PVector insert_multi_covector(const PForm& a, const PVector& t) {
  return contract_impl<PVector>(a, t);
}

// ---------------------------------------------------------------------------
// R^2-valued forms

VValuedForm istar(const VValuedForm& w) { return {-w.c2, w.c1}; }

PForm vwedge(const VValuedForm& a, const VValuedForm& b) {
  return wedge(a.c1, b.c2) - wedge(a.c2, b.c1);
}

// ---------------------------------------------------------------------------
// Builders

PForm zero_form(int dim, int grade) { return PForm(dim, grade); }
PVector zero_vector(int dim, int grade) { return PVector(dim, grade); }

PForm basis_form(int dim, std::initializer_list<int> idx) {
  IndexTuple t(idx);
  PForm r(dim, t.size());
  r.set(t, ScalarExpr::integer(1));
  return r;
}

PVector basis_vector(int dim, std::initializer_list<int> idx) {
  IndexTuple t(idx);
  PVector r(dim, t.size());
  r.set(t, ScalarExpr::integer(1));
  return r;
}

PForm scalar_form(int dim, ScalarExpr f) {
  PForm r(dim, 0);
  r.set(IndexTuple{}, std::move(f));
  return r;
}

PForm volume_form(int dim) {
  return dim == 4 ? basis_form(4, {1, 2, 3, 4}) : basis_form(3, {1, 2, 3});
}

PVector volume_vector(int dim) {
  return dim == 4 ? basis_vector(4, {1, 2, 3, 4}) : basis_vector(3, {1, 2, 3});
}

PForm oneform_from_triple(const std::array<ScalarExpr, 3>& v) {
  PForm r(3, 1);
  for (int k = 0; k < 3; ++k) r.set(IndexTuple{k + 1}, v[static_cast<std::size_t>(k)]);
  return r;
}

std::array<ScalarExpr, 3> triple_from_oneform(const PForm& a) {
  if (a.dim() != 3 || a.grade() != 1)
    throw std::invalid_argument("expected a 1-form on R^3");
  return {a.coeff(IndexTuple{1}), a.coeff(IndexTuple{2}), a.coeff(IndexTuple{3})};
}

}  // namespace emforms
