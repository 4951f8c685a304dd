// Polynomial normal form over function atoms, and the zero decision built
// on it.
//
// The normal form is a rational-coefficient polynomial whose generators are
// chart variables, named parameters, pi, sqrt2, sqrt3, and canonicalized
// function atoms sin/cos/sinh/cosh/exp applied to normal forms.  Rewrites
// applied on the way in:
//   sqrt2^2 -> 2, sqrt3^2 -> 3
//   exp(u)^k and exp(u)*exp(v) fold into a single exp of the combined arg
//   sin(u)^2 -> 1 - cos(u)^2, sinh(u)^2 -> cosh(u)^2 - 1
//   sin/cos/sinh/cosh of multi-term linear args expand by addition formulas
//   rational multiples fold by the multiple-angle recursion
//   odd/even parity normalizes the argument sign
//   sin/cos at rational multiples of pi/12 take exact values in Q(sqrt2,sqrt3)
// A polynomial that reduces to the empty term map is identically zero; the
// converse direction is delegated to numeric sampling by is_zero.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "node.hpp"

namespace emforms {
namespace {

using detail::NK;
using detail::Node;
using detail::NodePtr;

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

struct Gen {
  enum class Kind : int { Chart = 0, Param = 1, Pi = 2, Sqrt2 = 3, Sqrt3 = 4, Fun = 5 };
  Kind kind = Kind::Chart;
  Var var = Var::X;             // Chart
  std::string name;             // Param
  FuncKind fun = FuncKind::Sin; // Fun
  PolyPtr arg;                  // Fun: canonical normal form of the argument
};

int cmp(const Poly& a, const Poly& b);

int cmp(const Gen& a, const Gen& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Gen::Kind::Chart:
      return a.var == b.var ? 0 : (a.var < b.var ? -1 : 1);
    case Gen::Kind::Param:
      return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case Gen::Kind::Fun:
      if (a.fun != b.fun) return a.fun < b.fun ? -1 : 1;
      return cmp(*a.arg, *b.arg);
    default:
      return 0;
  }
}

struct GenLess {
  bool operator()(const Gen& a, const Gen& b) const { return cmp(a, b) < 0; }
};

struct Mono {
  std::map<Gen, int, GenLess> factors;  // nonzero exponents only
};

int cmp(const Mono& a, const Mono& b) {
  auto ia = a.factors.begin(), ib = b.factors.begin();
  for (; ia != a.factors.end() && ib != b.factors.end(); ++ia, ++ib) {
    int c = cmp(ia->first, ib->first);
    if (c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.factors.end()) return 1;
  if (ib != b.factors.end()) return -1;
  return 0;
}

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }
};

struct Poly {
  std::map<Mono, Rat, MonoLess> terms;  // nonzero coefficients only
};

int cmp(const Poly& a, const Poly& b) {
  auto ia = a.terms.begin(), ib = b.terms.begin();
  for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
    int c = cmp(ia->first, ib->first);
    if (c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms.end()) return 1;
  if (ib != b.terms.end()) return -1;
  return 0;
}

Poly p_zero() { return {}; }

Poly p_const(Rat r) {
  Poly p;
  if (r != 0) p.terms.emplace(Mono{}, std::move(r));
  return p;
}

Poly p_gen(Gen g, int e = 1) {
  Poly p;
  Mono m;
  m.factors.emplace(std::move(g), e);
  p.terms.emplace(std::move(m), Rat(1));
  return p;
}

void p_add_term(Poly& p, const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = p.terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.terms.erase(it);
  }
}

Poly p_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms) p_add_term(r, m, c);
  return r;
}

Poly p_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r.terms) c = -c;
  return r;
}

Poly p_sub(const Poly& a, const Poly& b) { return p_add(a, p_neg(b)); }

Poly p_scale(const Poly& a, const Rat& k) {
  Poly r;
  if (k == 0) return r;
  for (const auto& [m, c] : a.terms) r.terms.emplace(m, c * k);
  return r;
}

bool p_is_zero(const Poly& p) { return p.terms.empty(); }

long long floordiv2(long long e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

Rat rat_int_pow(Rat base, long long e) {
  Rat acc(1);
  bool inv = e < 0;
  unsigned long long n = inv ? static_cast<unsigned long long>(-e)
                             : static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1ull) acc *= base;
    base *= base;
    n >>= 1ull;
  }
  if (inv) acc = Rat(1) / acc;
  return acc;
}

PolyPtr intern(Poly p) { return std::make_shared<const Poly>(std::move(p)); }

// Multiplies two monomials; sqrt reductions and exp folding can spin off a
// rational factor and restructure the exp atoms.
std::pair<Mono, Rat> m_mul(const Mono& a, const Mono& b) {
  Mono m = a;
  Rat factor(1);
  for (const auto& [g, e] : b.factors) {
    auto [it, inserted] = m.factors.emplace(g, e);
    if (!inserted) {
      it->second += e;
      if (it->second == 0) m.factors.erase(it);
    }
  }
  // sqrt2 / sqrt3 exponent reduction to {0, 1}
  for (auto which : {Gen::Kind::Sqrt2, Gen::Kind::Sqrt3}) {
    Gen key;
    key.kind = which;
    auto it = m.factors.find(key);
    if (it == m.factors.end()) continue;
    long long e = it->second;
    long long q = floordiv2(e);
    long long r = e - 2 * q;
    if (q != 0) factor *= rat_int_pow(Rat(which == Gen::Kind::Sqrt2 ? 2 : 3), q);
    if (r == 0)
      m.factors.erase(it);
    else
      it->second = 1;
  }
  // exp folding: combine all exp atoms into one with summed arguments
  std::vector<std::pair<PolyPtr, int>> exps;
  for (auto it = m.factors.begin(); it != m.factors.end();) {
    if (it->first.kind == Gen::Kind::Fun && it->first.fun == FuncKind::Exp) {
      exps.emplace_back(it->first.arg, it->second);
      it = m.factors.erase(it);
    } else {
      ++it;
    }
  }
  if (!exps.empty()) {
    if (exps.size() == 1 && exps[0].second == 1) {
      Gen g;
      g.kind = Gen::Kind::Fun;
      g.fun = FuncKind::Exp;
      g.arg = exps[0].first;
      m.factors.emplace(std::move(g), 1);
    } else {
      Poly combined;
      for (const auto& [argp, e] : exps)
        combined = p_add(combined, p_scale(*argp, Rat(e)));
      if (!p_is_zero(combined)) {
        Gen g;
        g.kind = Gen::Kind::Fun;
        g.fun = FuncKind::Exp;
        g.arg = intern(std::move(combined));
        m.factors.emplace(std::move(g), 1);
      }
    }
  }
  return {std::move(m), std::move(factor)};
}

// sin(u)^2 -> 1 - cos(u)^2 and sinh(u)^2 -> cosh(u)^2 - 1 until no monomial
// carries a sin/sinh power above one.  Terminates because each rewrite
// strictly lowers the total sin+sinh degree.
Poly p_reduce(Poly p);

Poly p_mul_raw(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      auto [m, f] = m_mul(ma, mb);
      p_add_term(r, m, ca * cb * f);
    }
  }
  return r;
}

Poly p_mul(const Poly& a, const Poly& b) { return p_reduce(p_mul_raw(a, b)); }

Poly p_reduce(Poly p) {
  for (;;) {
    bool changed = false;
    for (auto it = p.terms.begin(); it != p.terms.end(); ++it) {
      const Mono& m = it->first;
      auto hit = std::find_if(m.factors.begin(), m.factors.end(), [](const auto& fe) {
        return fe.first.kind == Gen::Kind::Fun && fe.second >= 2 &&
               (fe.first.fun == FuncKind::Sin || fe.first.fun == FuncKind::Sinh);
      });
      if (hit == m.factors.end()) continue;

      Gen odd = hit->first;
      Rat coeff = it->second;
      Mono rest = m;
      auto rit = rest.factors.find(odd);
      rit->second -= 2;
      if (rit->second == 0) rest.factors.erase(rit);
      p.terms.erase(it);

      Gen even = odd;
      even.fun = odd.fun == FuncKind::Sin ? FuncKind::Cos : FuncKind::Cosh;
      Poly evensq = p_gen(even, 2);
      Poly square = odd.fun == FuncKind::Sin ? p_sub(p_const(Rat(1)), evensq)
                                             : p_sub(evensq, p_const(Rat(1)));
      Poly restp;
      restp.terms.emplace(std::move(rest), coeff);
      p = p_add(p, p_mul_raw(restp, square));
      changed = true;
      break;
    }
    if (!changed) return p;
  }
}

Poly p_pow(const Poly& a, unsigned n) {
  Poly acc = p_const(Rat(1));
  Poly base = a;
  while (n) {
    if (n & 1u) acc = p_mul(acc, base);
    if (n >>= 1u) base = p_mul(base, base);
  }
  return acc;
}

bool gen_is_const(const Gen& g);

bool poly_is_const(const Poly& p) {
  for (const auto& [m, c] : p.terms)
    for (const auto& [g, e] : m.factors)
      if (!gen_is_const(g)) return false;
  return true;
}

bool gen_is_const(const Gen& g) {
  switch (g.kind) {
    case Gen::Kind::Chart:
    case Gen::Kind::Param:
      return false;
    case Gen::Kind::Fun:
      return poly_is_const(*g.arg);
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------
// Canonical function atoms

Poly atom_fun(FuncKind f, const Poly& u);

Poly atom_gen(FuncKind f, Poly arg) {
  Gen g;
  g.kind = Gen::Kind::Fun;
  g.fun = f;
  g.arg = intern(std::move(arg));
  return p_gen(g);
}

bool fun_is_odd(FuncKind f) { return f == FuncKind::Sin || f == FuncKind::Sinh; }

FuncKind fun_partner(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return FuncKind::Cos;
    case FuncKind::Cos: return FuncKind::Sin;
    case FuncKind::Sinh: return FuncKind::Cosh;
    default: return FuncKind::Sinh;  // Cosh
  }
}

bool fun_is_trig(FuncKind f) { return f == FuncKind::Sin || f == FuncKind::Cos; }

// cos(k*pi/12) for k in [0, 24), exact over Q(sqrt2, sqrt3).
Poly cos_twelfths(long long k) {
  k = ((k % 24) + 24) % 24;
  if (k > 12) k = 24 - k;
  bool negate = false;
  if (k > 6) {
    k = 12 - k;
    negate = true;
  }
  Gen s2;
  s2.kind = Gen::Kind::Sqrt2;
  Gen s3;
  s3.kind = Gen::Kind::Sqrt3;
  Poly v;
  switch (k) {
    case 0: v = p_const(Rat(1)); break;
    case 1:  // (sqrt6 + sqrt2)/4
      v = p_add(p_scale(p_mul_raw(p_gen(s2), p_gen(s3)), Rat(1, 4)),
                p_scale(p_gen(s2), Rat(1, 4)));
      break;
    case 2: v = p_scale(p_gen(s3), Rat(1, 2)); break;
    case 3: v = p_scale(p_gen(s2), Rat(1, 2)); break;
    case 4: v = p_const(Rat(1, 2)); break;
    case 5:  // (sqrt6 - sqrt2)/4
      v = p_sub(p_scale(p_mul_raw(p_gen(s2), p_gen(s3)), Rat(1, 4)),
                p_scale(p_gen(s2), Rat(1, 4)));
      break;
    default: v = p_zero(); break;  // k == 6
  }
  return negate ? p_neg(v) : v;
}

Poly sin_twelfths(long long k) { return cos_twelfths(k - 6); }

// f(n*theta) as a polynomial in the grade-one atoms of theta, by the
// angle-addition recursion.  n >= 1.
Poly multiple_angle(FuncKind f, unsigned n, const Poly& s1, const Poly& c1) {
  Poly s = s1, c = c1;
  bool trig = fun_is_trig(f);
  for (unsigned k = 2; k <= n; ++k) {
    Poly s_next = p_add(p_mul_raw(s, c1), p_mul_raw(c, s1));
    Poly c_next = trig ? p_sub(p_mul_raw(c, c1), p_mul_raw(s, s1))
                       : p_add(p_mul_raw(c, c1), p_mul_raw(s, s1));
    s = std::move(s_next);
    c = std::move(c_next);
  }
  return fun_is_odd(f) ? s : c;
}

// Single addend: u = coeff-part * symbol (or a pure constant).  Returns the
// canonical expansion of f(u).
Poly atom_single(FuncKind f, const Poly& u) {
  if (p_is_zero(u))
    return fun_is_odd(f) ? p_zero() : p_const(Rat(1));

  if (u.terms.size() == 1) {
    const Mono& mono = u.terms.begin()->first;
    const Rat& q = u.terms.begin()->second;
    Int a = numerator(q);
    Int b = denominator(q);
    bool negate_arg = a < 0;
    if (negate_arg) a = -a;

    // Exact table: trig at a rational multiple of pi (and nothing else).
    if (fun_is_trig(f) && mono.factors.size() == 1) {
      const Gen& g = mono.factors.begin()->first;
      if (g.kind == Gen::Kind::Pi && mono.factors.begin()->second == 1 &&
          12 % b == 0) {
        Int k = (negate_arg ? -a : a) * (Int(12) / b);
        long long kk = static_cast<long long>(k % 24);
        return f == FuncKind::Sin ? sin_twelfths(kk) : cos_twelfths(kk);
      }
    }

    // Base argument (1/b) * mono, expanded to the |a|-fold angle.
    Poly base;
    base.terms.emplace(mono, Rat(1) / Rat(b));
    if (a <= 64) {
      unsigned n = static_cast<unsigned>(a);
      Poly result;
      if (n == 1) {
        result = atom_gen(f, std::move(base));
      } else {
        Poly s1 = atom_gen(FuncKind::Sin == f || FuncKind::Cos == f ? FuncKind::Sin
                                                                    : FuncKind::Sinh,
                           base);
        Poly c1 = atom_gen(fun_is_trig(f) ? FuncKind::Cos : FuncKind::Cosh, base);
        result = p_reduce(multiple_angle(f, n, s1, c1));
      }
      if (negate_arg && fun_is_odd(f)) result = p_neg(result);
      return result;
    }
    // Astronomically large multiples: keep an opaque atom, sign-canonical.
    Poly arg;
    arg.terms.emplace(mono, negate_arg ? -q : q);
    Poly result = atom_gen(f, std::move(arg));
    return (negate_arg && fun_is_odd(f)) ? p_neg(result) : result;
  }

  // Multi-monomial single addend (e.g. (1+sqrt2)*x): opaque atom with the
  // sign of the leading coefficient canonicalized.
  bool negate_arg = u.terms.begin()->second < 0;
  Poly arg = negate_arg ? p_neg(u) : u;
  Poly result = atom_gen(f, std::move(arg));
  return (negate_arg && fun_is_odd(f)) ? p_neg(result) : result;
}

// Splits u into linear addends c_s * s (s a chart variable or parameter,
// c_s constant) plus a constant remainder.  Fails if any monomial mixes
// symbols, powers a symbol, or hides one inside a non-constant atom.
bool split_linear(const Poly& u, std::vector<Poly>& addends) {
  std::map<Gen, Poly, GenLess> parts;
  Poly c0;
  for (const auto& [m, c] : u.terms) {
    const Gen* symbol = nullptr;
    Mono rest;
    bool ok = true;
    for (const auto& [g, e] : m.factors) {
      if (gen_is_const(g)) {
        rest.factors.emplace(g, e);
        continue;
      }
      if (g.kind == Gen::Kind::Fun || e != 1 || symbol != nullptr) {
        ok = false;
        break;
      }
      symbol = &g;
    }
    if (!ok) return false;
    if (symbol == nullptr) {
      p_add_term(c0, m, c);
    } else {
      Poly coeff;
      coeff.terms.emplace(std::move(rest), c);
      auto [it, inserted] = parts.emplace(*symbol, coeff);
      if (!inserted) it->second = p_add(it->second, coeff);
    }
  }
  for (auto& [g, coeff] : parts) {
    if (p_is_zero(coeff)) continue;
    Poly addend;
    for (const auto& [m, c] : coeff.terms) {
      auto [mm, f] = m_mul(m, p_gen(g).terms.begin()->first);
      p_add_term(addend, mm, c * f);
    }
    addends.push_back(std::move(addend));
  }
  if (!p_is_zero(c0)) addends.push_back(std::move(c0));
  return true;
}

// Addition-formula expansion of f over the addend list [i, end).
struct AdditionExpander {
  const std::vector<Poly>& addends;
  bool trig;
  std::vector<std::optional<Poly>> sin_memo, cos_memo;

  AdditionExpander(const std::vector<Poly>& a, bool trig_)
      : addends(a), trig(trig_), sin_memo(a.size()), cos_memo(a.size()) {}

  const Poly& odd(std::size_t i) {
    if (!sin_memo[i]) {
      FuncKind f = trig ? FuncKind::Sin : FuncKind::Sinh;
      if (i + 1 == addends.size()) {
        sin_memo[i] = atom_single(f, addends[i]);
      } else {
        // sin(A+B) = sin A cos B + cos A sin B (sinh likewise)
        Poly sA = atom_single(f, addends[i]);
        Poly cA = atom_single(fun_partner(f), addends[i]);
        sin_memo[i] = p_add(p_mul(sA, even(i + 1)), p_mul(cA, odd(i + 1)));
      }
    }
    return *sin_memo[i];
  }

  const Poly& even(std::size_t i) {
    if (!cos_memo[i]) {
      FuncKind f = trig ? FuncKind::Cos : FuncKind::Cosh;
      FuncKind fo = trig ? FuncKind::Sin : FuncKind::Sinh;
      if (i + 1 == addends.size()) {
        cos_memo[i] = atom_single(f, addends[i]);
      } else {
        // cos(A+B) = cos A cos B - sin A sin B; cosh picks up a plus sign
        Poly cA = atom_single(f, addends[i]);
        Poly sA = atom_single(fo, addends[i]);
        Poly prod = p_mul(sA, odd(i + 1));
        cos_memo[i] = trig ? p_sub(p_mul(cA, even(i + 1)), prod)
                           : p_add(p_mul(cA, even(i + 1)), prod);
      }
    }
    return *cos_memo[i];
  }
};

Poly atom_fun(FuncKind f, const Poly& u) {
  if (f == FuncKind::Exp) {
    if (p_is_zero(u)) return p_const(Rat(1));
    return atom_gen(FuncKind::Exp, u);
  }
  std::vector<Poly> addends;
  if (!split_linear(u, addends)) {
    // Nonlinear argument: opaque atom, sign-canonical.
    bool negate_arg = !u.terms.empty() && u.terms.begin()->second < 0;
    Poly arg = negate_arg ? p_neg(u) : u;
    Poly result = atom_gen(f, std::move(arg));
    return (negate_arg && fun_is_odd(f)) ? p_neg(result) : result;
  }
  if (addends.empty()) return fun_is_odd(f) ? p_zero() : p_const(Rat(1));
  if (addends.size() == 1) return atom_single(f, addends[0]);
  AdditionExpander ex(addends, fun_is_trig(f));
  return p_reduce(fun_is_odd(f) ? ex.odd(0) : ex.even(0));
}

// ---------------------------------------------------------------------------
// Tree -> normal form

bool mono_invertible(const Mono& m) {
  for (const auto& [g, e] : m.factors) {
    bool ok = g.kind == Gen::Kind::Pi || g.kind == Gen::Kind::Sqrt2 ||
              g.kind == Gen::Kind::Sqrt3 ||
              (g.kind == Gen::Kind::Fun && g.fun == FuncKind::Exp);
    if (!ok) return false;
  }
  return true;
}

using Memo = std::map<const Node*, std::optional<Poly>>;

std::optional<Poly> polyize(const NodePtr& n, Memo& memo) {
  auto found = memo.find(n.get());
  if (found != memo.end()) return found->second;
  std::optional<Poly> r;
  switch (n->kind) {
    case NK::Rational: r = p_const(n->value); break;
    case NK::ChartVar: {
      Gen g;
      g.kind = Gen::Kind::Chart;
      g.var = n->var;
      r = p_gen(g);
      break;
    }
    case NK::Param: {
      Gen g;
      g.kind = Gen::Kind::Param;
      g.name = n->name;
      r = p_gen(g);
      break;
    }
    case NK::Pi: {
      Gen g;
      g.kind = Gen::Kind::Pi;
      r = p_gen(g);
      break;
    }
    case NK::Sqrt2: {
      Gen g;
      g.kind = Gen::Kind::Sqrt2;
      r = p_gen(g);
      break;
    }
    case NK::Sqrt3: {
      Gen g;
      g.kind = Gen::Kind::Sqrt3;
      r = p_gen(g);
      break;
    }
    case NK::Add: {
      auto a = polyize(n->a, memo), b = polyize(n->b, memo);
      if (a && b) r = p_add(*a, *b);
      break;
    }
    case NK::Sub: {
      auto a = polyize(n->a, memo), b = polyize(n->b, memo);
      if (a && b) r = p_sub(*a, *b);
      break;
    }
    case NK::Mul: {
      auto a = polyize(n->a, memo), b = polyize(n->b, memo);
      if (a && b) r = p_mul(*a, *b);
      break;
    }
    case NK::Neg: {
      auto a = polyize(n->a, memo);
      if (a) r = p_neg(*a);
      break;
    }
    case NK::Pow: {
      auto a = polyize(n->a, memo);
      if (a) r = p_pow(*a, n->exponent);
      break;
    }
    case NK::Fun: {
      auto a = polyize(n->a, memo);
      if (a) r = atom_fun(n->fun, *a);
      break;
    }
    case NK::Div: {
      auto a = polyize(n->a, memo), b = polyize(n->b, memo);
      if (a && b && b->terms.size() == 1 &&
          mono_invertible(b->terms.begin()->first)) {
        const Mono& dm = b->terms.begin()->first;
        Rat dc = b->terms.begin()->second;
        Mono inv;
        for (const auto& [g, e] : dm.factors) inv.factors.emplace(g, -e);
        Poly res;
        for (const auto& [m, c] : a->terms) {
          auto [mm, f] = m_mul(m, inv);
          p_add_term(res, mm, c * f / dc);
        }
        r = std::move(res);
      }
      break;
    }
  }
  memo.emplace(n.get(), r);
  return r;
}

// ---------------------------------------------------------------------------
// Normal form -> tree

NodePtr poly_to_tree(const Poly& p);

NodePtr gen_to_tree(const Gen& g) {
  switch (g.kind) {
    case Gen::Kind::Chart: return detail::mk_var(g.var);
    case Gen::Kind::Param: return detail::mk_param(g.name);
    case Gen::Kind::Pi: return detail::mk_const(NK::Pi);
    case Gen::Kind::Sqrt2: return detail::mk_const(NK::Sqrt2);
    case Gen::Kind::Sqrt3: return detail::mk_const(NK::Sqrt3);
    case Gen::Kind::Fun: return detail::mk_fun(g.fun, poly_to_tree(*g.arg));
  }
  return detail::mk_rational(Rat(0));
}

NodePtr poly_to_tree(const Poly& p) {
  NodePtr sum;
  for (const auto& [m, c] : p.terms) {
    NodePtr num;
    NodePtr den;
    for (const auto& [g, e] : m.factors) {
      NodePtr base = gen_to_tree(g);
      if (e > 0) {
        NodePtr f = detail::mk_pow(base, static_cast<unsigned>(e));
        num = num ? detail::mk_mul(num, f) : f;
      } else {
        NodePtr f = detail::mk_pow(base, static_cast<unsigned>(-e));
        den = den ? detail::mk_mul(den, f) : f;
      }
    }
    NodePtr term;
    if (!num) {
      term = detail::mk_rational(c);
    } else if (c == 1) {
      term = num;
    } else if (c == -1) {
      term = detail::mk_neg(num);
    } else {
      term = detail::mk_mul(detail::mk_rational(c), num);
    }
    if (den) term = detail::mk_div(term, den);
    sum = sum ? detail::mk_add(sum, term) : term;
  }
  return sum ? sum : detail::mk_rational(Rat(0));
}

NodePtr normalize_node(const NodePtr& n, Memo& memo) {
  auto p = polyize(n, memo);
  if (p) return poly_to_tree(*p);
  switch (n->kind) {
    case NK::Add: return detail::mk_add(normalize_node(n->a, memo), normalize_node(n->b, memo));
    case NK::Sub: return detail::mk_sub(normalize_node(n->a, memo), normalize_node(n->b, memo));
    case NK::Mul: return detail::mk_mul(normalize_node(n->a, memo), normalize_node(n->b, memo));
    case NK::Neg: return detail::mk_neg(normalize_node(n->a, memo));
    case NK::Pow: return detail::mk_pow(normalize_node(n->a, memo), n->exponent);
    case NK::Fun: return detail::mk_fun(n->fun, normalize_node(n->a, memo));
    case NK::Div: {
      NodePtr num = normalize_node(n->a, memo);
      if (detail::is_zero_literal(num)) return num;
      return detail::mk_div(num, normalize_node(n->b, memo));
    }
    default: return n;
  }
}

}  // namespace

ScalarExpr normalize(const ScalarExpr& e) {
  Memo memo;
  return ScalarExpr::wrap(normalize_node(e.ptr(), memo));
}

bool identical_normal_form(const ScalarExpr& a, const ScalarExpr& b) {
  return detail::node_equal(normalize(a).ptr(), normalize(b).ptr());
}

// ---------------------------------------------------------------------------
// Zero decision

namespace {

constexpr std::uint64_t kSampleSeed = 0x9E3779B97F4A7C15ull;

// splitmix64; platform-independent, unlike <random> distributions.
std::uint64_t mix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

ZeroVerdict is_zero(const ScalarExpr& e, const ZeroOptions& opts) {
  if (!opts.numeric_only) {
    Memo memo;
    auto p = polyize(e.ptr(), memo);
    if (p && p->terms.empty()) return {ZeroKind::SymbolicZero};
  }

  std::vector<std::string> symbols = collect_symbols(e);
  int samples = symbols.empty() ? 1 : std::max(1, opts.samples);
  std::uint64_t state = kSampleSeed;
  bool any_evaluated = false;
  for (int i = 0; i < samples; ++i) {
    Point4 pt;
    std::map<std::string, double> params;
    for (const auto& s : symbols) {
      double v = -2.0 + 4.0 * unit_double(mix(state));
      if (s == "x") pt.x = v;
      else if (s == "y") pt.y = v;
      else if (s == "z") pt.z = v;
      else if (s == "xi") pt.xi = v;
      else params[s] = v;
    }
    double value;
    try {
      value = eval(e, pt, params);
    } catch (const PoleError&) {
      continue;
    }
    if (!std::isfinite(value)) continue;
    any_evaluated = true;
    if (std::abs(value) > opts.tolerance) {
      ZeroVerdict v;
      v.kind = ZeroKind::NonZero;
      v.witness_value = value;
      for (const auto& s : symbols) {
        if (s == "x") v.witness["x"] = pt.x;
        else if (s == "y") v.witness["y"] = pt.y;
        else if (s == "z") v.witness["z"] = pt.z;
        else if (s == "xi") v.witness["xi"] = pt.xi;
        else v.witness[s] = params[s];
      }
      return v;
    }
  }
  if (!any_evaluated) return {ZeroKind::Indeterminate};
  ZeroVerdict v;
  v.kind = ZeroKind::NumericZero;
  v.tolerance = opts.tolerance;
  return v;
}

ZeroVerdict aggregate_verdicts(const std::vector<ZeroVerdict>& parts) {
  auto rank = [](ZeroKind k) {
    switch (k) {
      case ZeroKind::NonZero: return 3;
      case ZeroKind::Indeterminate: return 2;
      case ZeroKind::NumericZero: return 1;
      default: return 0;
    }
  };
  ZeroVerdict best;  // SymbolicZero
  for (const auto& p : parts) {
    if (rank(p.kind) > rank(best.kind)) best = p;
    else if (p.kind == ZeroKind::NumericZero && best.kind == ZeroKind::NumericZero)
      best.tolerance = std::max(best.tolerance, p.tolerance);
  }
  return best;
}

}  // namespace emforms
