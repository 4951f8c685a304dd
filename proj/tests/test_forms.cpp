#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "emforms/forms.hpp"

using namespace emforms;

namespace {

ScalarExpr ex(const char* s) { return parse_expr(s); }

bool form_zero(const PForm& f) {
  return f.is_zero_verdict().kind == ZeroKind::SymbolicZero;
}

// Deterministic small random forms with polynomial and trigonometric
// coefficients.
class FormGen {
 public:
  explicit FormGen(unsigned seed) : rng_(seed) {}

  ScalarExpr coeff() {
    switch (rng_() % 6) {
      case 0: return ex("x*y");
      case 1: return ex("sin(z)");
      case 2: return ex("xi^2 - x");
      case 3: return ex("cos(x - xi)");
      case 4: return ScalarExpr::rational(Rat(int(rng_() % 7) - 3));
      default: return ex("exp(y)");
    }
  }

  PForm form(int dim, int grade) {
    PForm f(dim, grade);
    for (const auto& t : tuples(dim, grade)) {
      if (rng_() % 2 == 0) f.add(t, coeff());
    }
    return f;
  }

  PVector vec(int dim, int grade) {
    PVector v(dim, grade);
    for (const auto& t : tuples(dim, grade)) {
      if (rng_() % 2 == 0) v.add(t, coeff());
    }
    return v;
  }

  static std::vector<IndexTuple> tuples(int dim, int grade) {
    std::vector<IndexTuple> out;
    if (grade == 0) {
      out.push_back(IndexTuple{});
      return out;
    }
    for (int a = 1; a <= dim; ++a) {
      if (grade == 1) { out.push_back(IndexTuple{a}); continue; }
      for (int b = a + 1; b <= dim; ++b) {
        if (grade == 2) { out.push_back(IndexTuple{a, b}); continue; }
        for (int c = b + 1; c <= dim; ++c) {
          if (grade == 3) { out.push_back(IndexTuple{a, b, c}); continue; }
          for (int d = c + 1; d <= dim; ++d) out.push_back(IndexTuple{a, b, c, d});
        }
      }
    }
    return out;
  }

  std::mt19937 rng_;
};

}  // namespace

TEST_CASE("index tuples sort with the permutation sign") {
  auto r = IndexTuple::from_unsorted({3, 1, 2});
  REQUIRE(r.has_value());
  CHECK(r->first == IndexTuple{1, 2, 3});
  CHECK(r->second == 1);  // even permutation
  auto s = IndexTuple::from_unsorted({2, 1});
  CHECK(s->second == -1);
  CHECK(!IndexTuple::from_unsorted({1, 1}).has_value());

  auto ins = IndexTuple{1, 3}.inserted(2);
  REQUIRE(ins.has_value());
  CHECK(ins->first == IndexTuple{1, 2, 3});
  CHECK(ins->second == -1);  // one transposition past index 1
  CHECK(!IndexTuple{1, 3}.inserted(3).has_value());

  CHECK(IndexTuple{1, 3}.complement(4) == IndexTuple{2, 4});
  auto rem = IndexTuple{1, 2, 3}.removed(IndexTuple{2});
  CHECK(rem.first == IndexTuple{1, 3});
  CHECK(rem.second == -1);  // (2) then (1,3) sorts with one inversion
}

TEST_CASE("wedge is graded anticommutative and associative") {
  FormGen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    int p = int(gen.rng_() % 3);
    int q = int(gen.rng_() % 3);
    PForm a = gen.form(4, p);
    PForm b = gen.form(4, q);
    int sign = (p * q) % 2 == 0 ? 1 : -1;
    CHECK(form_zero(wedge(a, b) - wedge(b, a).scaled(ScalarExpr::integer(sign))));
    PForm c = gen.form(4, 1);
    CHECK(form_zero(wedge(wedge(a, b), c) - wedge(a, wedge(b, c))));
  }
  // Grade overflow collapses to the zero form.
  PForm three = gen.form(4, 3);
  PForm two = gen.form(4, 2);
  CHECK(wedge(three, two).grade() == 0);
  CHECK(form_zero(wedge(three, two)));
}

TEST_CASE("d squares to zero and obeys the Leibniz rule") {
  FormGen gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    int p = int(gen.rng_() % 3);
    PForm a = gen.form(4, p);
    CHECK(form_zero(exterior_derivative(exterior_derivative(a))));
    PForm b = gen.form(4, int(gen.rng_() % 2) + 1);
    PForm lhs = exterior_derivative(wedge(a, b));
    PForm rhs = wedge(exterior_derivative(a), b) +
                wedge(a, exterior_derivative(b)).scaled(
                    ScalarExpr::integer(p % 2 == 0 ? 1 : -1));
    CHECK(form_zero(lhs - rhs));
  }
  // R^3 derivative never produces the time axis.
  PForm w(3, 1);
  w.set(IndexTuple{1}, ex("y*xi"));
  PForm dw = exterior_derivative(w);
  for (const auto& [t, c] : dw.terms()) {
    CHECK(!t.contains(4));
  }
}

TEST_CASE("pairing contracts basis duals") {
  PForm a(4, 2);
  a.set(IndexTuple{1, 3}, ex("2"));
  a.set(IndexTuple{2, 4}, ex("x"));
  PVector t(4, 2);
  t.set(IndexTuple{1, 3}, ex("5"));
  CHECK(is_zero(pairing(a, t) - ex("10")).kind == ZeroKind::SymbolicZero);
}

TEST_CASE("interior product is an antiderivation") {
  FormGen gen(37);
  for (int trial = 0; trial < 20; ++trial) {
    PVector x = gen.vec(4, 1);
    int p = int(gen.rng_() % 2) + 1;
    PForm a = gen.form(4, p);
    PForm b = gen.form(4, int(gen.rng_() % 2) + 1);
    PForm lhs = insert_vector(x, wedge(a, b));
    PForm rhs = wedge(insert_vector(x, a), b) +
                wedge(a, insert_vector(x, b)).scaled(
                    ScalarExpr::integer(p % 2 == 0 ? 1 : -1));
    CHECK(form_zero(lhs - rhs));
  }
}

TEST_CASE("multivector insertion composes single insertions") {
  FormGen gen(41);
  for (int trial = 0; trial < 10; ++trial) {
    PVector u = gen.vec(4, 1);
    PVector v = gen.vec(4, 1);
    PForm a = gen.form(4, 3);
    PVector uv = wedge(u, v);
    // i(u ^ v) = i(v) o i(u).
    PForm lhs = insert_multi(uv, a);
    PForm rhs = insert_vector(v, insert_vector(u, a));
    CHECK(form_zero(lhs - rhs));
  }
  // Inserting past the grade yields the zero 0-form.
  PVector t(4, 3);
  t.set(IndexTuple{1, 2, 3}, ex("1"));
  PForm a(4, 2);
  a.set(IndexTuple{1, 2}, ex("x"));
  PForm z = insert_multi(t, a);
  CHECK(z.grade() == 0);
  CHECK(form_zero(z));
}

TEST_CASE("covector insertion mirrors vector insertion") {
  FormGen gen(43);
  for (int trial = 0; trial < 10; ++trial) {
    PForm alpha(4, 1);
    alpha.set(IndexTuple{1}, gen.coeff());
    alpha.set(IndexTuple{3}, gen.coeff());
    PVector t = gen.vec(4, 2);
    PVector r = insert_covector(alpha, t);
    CHECK(r.grade() == 1);
    // Pair against a generic 1-form: <i(alpha) t, beta> = <alpha ^ beta, t>.
    PForm beta(4, 1);
    beta.set(IndexTuple{2}, gen.coeff());
    beta.set(IndexTuple{4}, gen.coeff());
    ScalarExpr lhs = pairing(beta, r);
    ScalarExpr rhs = pairing(wedge(alpha, beta), t);
    CHECK(is_zero(lhs - rhs).kind == ZeroKind::SymbolicZero);
  }
}

TEST_CASE("vector-valued forms") {
  VValuedForm w{PForm(3, 1), PForm(3, 1)};
  w.c1.set(IndexTuple{1}, ex("x"));
  w.c2.set(IndexTuple{2}, ex("y"));
  VValuedForm iw = istar(w);
  CHECK(form_zero(iw.c1 + w.c2));
  CHECK(form_zero(iw.c2 - w.c1));
  // istar twice is minus the identity.
  VValuedForm again = istar(iw);
  CHECK(form_zero(again.c1 + w.c1));
  CHECK(form_zero(again.c2 + w.c2));
  // vwedge(a, a) for a with equal components is zero.
  PForm v = vwedge(w, w);
  CHECK(v.grade() == 2);
  CHECK(form_zero(v - (wedge(w.c1, w.c2) - wedge(w.c2, w.c1))));
}

TEST_CASE("triple identification round-trips") {
  std::array<ScalarExpr, 3> v = {ex("x"), ex("y*z"), ex("sin(x)")};
  PForm f = oneform_from_triple(v);
  auto back = triple_from_oneform(f);
  for (int i = 0; i < 3; ++i) {
    CHECK(is_zero(back[size_t(i)] - v[size_t(i)]).kind == ZeroKind::SymbolicZero);
  }
}
