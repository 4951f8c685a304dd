#include "emforms/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "emforms/eed.hpp"
#include "emforms/maxwell.hpp"
#include "emforms/report.hpp"
#include "emforms/symmetry.hpp"

namespace emforms {

namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json_out = false;
  bool numeric_only = false;
};

ZeroOptions zero_opts(const Options& o) {
  ZeroOptions z;
  z.numeric_only = o.numeric_only;
  return z;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Stopwatch wrapper for a verdict computation.
template <typename Fn>
ZeroVerdict timed(Fn&& fn, double& elapsed_ms) {
  auto t0 = std::chrono::steady_clock::now();
  ZeroVerdict v = fn();
  elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return v;
}

template <typename Fn>
void add_timed(Report& r, const std::string& check, const std::string& residual,
               Fn&& fn) {
  double ms = 0;
  ZeroVerdict v = timed(std::forward<Fn>(fn), ms);
  add_entry(r, check, residual, std::move(v), ms);
}

ZeroVerdict exprs_verdict(const std::vector<ScalarExpr>& es, const ZeroOptions& o) {
  std::vector<ZeroVerdict> parts;
  parts.reserve(es.size());
  for (const auto& e : es) parts.push_back(is_zero(e, o));
  return aggregate_verdicts(parts);
}

ZeroVerdict vvalued_verdict(const VValuedForm& w, const ZeroOptions& o) {
  auto a = w.c1.component_verdicts(o);
  auto b = w.c2.component_verdicts(o);
  a.insert(a.end(), b.begin(), b.end());
  return aggregate_verdicts(a);
}

std::string rendered(const ScalarExpr& e) { return render(normalize(e)); }

// Configuration parsing ------------------------------------------------

ScalarExpr config_expr(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected an expression string");
  try {
    return parse_expr(j.get<std::string>(), /*allow_params=*/true);
  } catch (const ParseError& e) {
    throw ConfigError(where + ": " + e.what() + " (offset " +
                      std::to_string(e.offset()) + ")");
  }
}

struct FieldConfig {
  EMField3 field;
  std::string name;  // optional
};

FieldConfig field_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  auto triple = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3) {
      throw ConfigError(std::string("field config needs \"") + key +
                        "\": [expr, expr, expr]");
    }
    std::array<ScalarExpr, 3> out = {ScalarExpr::integer(0), ScalarExpr::integer(0),
                                     ScalarExpr::integer(0)};
    for (size_t i = 0; i < 3; ++i) {
      out[i] = config_expr(j.at(key)[i], std::string(key) + "[" + std::to_string(i) + "]");
    }
    return out;
  };
  FieldConfig fc{{triple("E"), triple("B")}, ""};
  if (j.contains("name") && j.at("name").is_string()) {
    fc.name = j.at("name").get<std::string>();
  }
  return fc;
}

VectorField4 vector_field_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("X") || !j.at("X").is_array() || j.at("X").size() != 4) {
    throw ConfigError("vector-field config needs \"X\": [expr, expr, expr, expr]");
  }
  VectorField4 f{{ScalarExpr::integer(0), ScalarExpr::integer(0),
                  ScalarExpr::integer(0), ScalarExpr::integer(0)}};
  for (size_t i = 0; i < 4; ++i) {
    f.comp[i] = config_expr(j.at("X")[i], "X[" + std::to_string(i) + "]");
  }
  return f;
}

// "[+-]?digits[.digits]" as an exact rational; nullopt when s is not a
// plain decimal literal.
std::optional<Rat> decimal_to_rational(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  size_t frac = 0;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (dot) return std::nullopt;
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      if (dot) ++frac;
    } else {
      return std::nullopt;
    }
  }
  if (digits.empty()) return std::nullopt;
  Int num(digits);
  Int den = 1;
  for (size_t k = 0; k < frac; ++k) den *= 10;
  Rat r(num, den);
  return neg ? -r : r;
}

// Constant expression from a command-line value: decimal literals become
// exact rationals, anything else must parse with no free symbols.
ScalarExpr parse_constant(const std::string& s, const char* what) {
  if (auto r = decimal_to_rational(s)) return ScalarExpr::rational(*r);
  ScalarExpr e = [&] {
    try {
      return parse_expr(s);
    } catch (const ParseError& pe) {
      throw ConfigError(std::string(what) + ": " + pe.what() + " (offset " +
                        std::to_string(pe.offset()) + ")");
    }
  }();
  if (!collect_symbols(e).empty()) {
    throw ConfigError(std::string(what) + " must be a constant expression");
  }
  return e;
}

std::array<ScalarExpr, 4> parse_point(const std::string& s) {
  std::array<ScalarExpr, 4> out = {ScalarExpr::integer(0), ScalarExpr::integer(0),
                                   ScalarExpr::integer(0), ScalarExpr::integer(0)};
  std::stringstream ss(s);
  std::string item;
  size_t n = 0;
  while (std::getline(ss, item, ',')) {
    if (n >= 4) throw ConfigError("point needs exactly four components");
    out[n++] = parse_constant(item, "point component");
  }
  if (n != 4) throw ConfigError("point needs exactly four components");
  return out;
}

// Suites ---------------------------------------------------------------

void run_maxwell_suites(Report& r, const EMField3& f, const ZeroOptions& zo,
                        const std::string& prefix = "") {
  auto r3 = maxwell_residual_3d(f);
  std::string s3 = prefix + "maxwell-3d";
  add_timed(r, s3, "faraday", [&] {
    return exprs_verdict({r3.faraday[0], r3.faraday[1], r3.faraday[2]}, zo);
  });
  add_timed(r, s3, "div-b", [&] { return is_zero(r3.div_b, zo); });
  add_timed(r, s3, "ampere", [&] {
    return exprs_verdict({r3.ampere[0], r3.ampere[1], r3.ampere[2]}, zo);
  });
  add_timed(r, s3, "div-e", [&] { return is_zero(r3.div_e, zo); });

  auto rr = maxwell_residual_r2(omega_from_field(f));
  std::string s2 = prefix + "maxwell-r2";
  add_timed(r, s2, "first-order", [&] { return vvalued_verdict(rr.first_order, zo); });
  add_timed(r, s2, "coclosed", [&] { return vvalued_verdict(rr.coclosed, zo); });

  auto r4 = maxwell_residual_4d(faraday_form(f));
  std::string s4 = prefix + "maxwell-4d";
  add_timed(r, s4, "closure", [&] { return r4.closure.is_zero_verdict(zo); });
  add_timed(r, s4, "companion-closure",
            [&] { return r4.companion_closure.is_zero_verdict(zo); });
}

void run_check_maxwell(Report& r, const FieldConfig& fc, const ZeroOptions& zo) {
  if (!fc.name.empty()) r.extras["field-name"] = fc.name;
  run_maxwell_suites(r, fc.field, zo);
}

void run_check_eed(Report& r, const FieldConfig& fc, const ZeroOptions& zo) {
  if (!fc.name.empty()) r.extras["field-name"] = fc.name;
  PForm F = faraday_form(fc.field);
  EEDResiduals res = eed_residuals(F);
  static const char* kNames[3] = {"first", "second", "mixed"};
  for (int k = 0; k < 3; ++k) {
    add_timed(r, "eed-star", kNames[k],
              [&] { return res.star[size_t(k)].is_zero_verdict(zo); });
  }
  for (int k = 0; k < 3; ++k) {
    add_timed(r, "eed-insertion", kNames[k],
              [&] { return res.insertion[size_t(k)].is_zero_verdict(zo); });
  }
  for (int k = 0; k < 3; ++k) {
    add_timed(r, "eed-lie", kNames[k],
              [&] { return res.lie.first_order[size_t(k)].is_zero_verdict(zo); });
  }
  add_timed(r, "eed-lie", "invariant-1",
            [&] { return is_zero(res.lie.constraint_first, zo); });
  add_timed(r, "eed-lie", "invariant-2",
            [&] { return is_zero(res.lie.constraint_second, zo); });
  FieldInvariants inv = invariants(fc.field);
  r.extras["I1"] = rendered(inv.first);
  r.extras["I2"] = rendered(inv.second);
}

void run_invariants(Report& r, const FieldConfig& fc) {
  if (!fc.name.empty()) r.extras["field-name"] = fc.name;
  FieldInvariants inv = invariants(fc.field);
  EnergyMomentum em = energy_momentum(fc.field);
  r.extras["I1"] = rendered(inv.first);
  r.extras["I2"] = rendered(inv.second);
  r.extras["energy-density"] = rendered(em.density);
  for (int k = 0; k < 3; ++k) {
    r.extras["flux-" + std::to_string(k + 1)] = rendered(em.flux[size_t(k)]);
  }
}

void run_dualize(Report& r, const FieldConfig& fc, const ScalarExpr& alpha,
                 const ZeroOptions& zo) {
  if (!fc.name.empty()) r.extras["field-name"] = fc.name;
  EMField3 rot = duality_rotate(fc.field, alpha);
  run_maxwell_suites(r, rot, zo, "rotated-");

  FieldInvariants inv = invariants(fc.field);
  FieldInvariants rinv = invariants(rot);
  FieldInvariants law = rotated_invariants_law(inv, alpha);
  EnergyMomentum em = energy_momentum(fc.field);
  EnergyMomentum rem = energy_momentum(rot);

  add_timed(r, "duality-laws", "energy-density-invariant",
            [&] { return is_zero(rem.density - em.density, zo); });
  add_timed(r, "duality-laws", "energy-flux-invariant", [&] {
    return exprs_verdict({rem.flux[0] - em.flux[0], rem.flux[1] - em.flux[1],
                          rem.flux[2] - em.flux[2]},
                         zo);
  });
  add_timed(r, "duality-laws", "first-invariant-law",
            [&] { return is_zero(rinv.first - law.first, zo); });
  add_timed(r, "duality-laws", "second-invariant-law",
            [&] { return is_zero(rinv.second - law.second, zo); });
  add_timed(r, "duality-laws", "norm-invariant", [&] {
    return is_zero(pow(rinv.first, 2) + pow(rinv.second, 2) - pow(inv.first, 2) -
                       pow(inv.second, 2),
                   zo);
  });

  r.extras["alpha"] = rendered(alpha);
  static const char* kAxes[3] = {"1", "2", "3"};
  for (int k = 0; k < 3; ++k) {
    r.extras[std::string("rotated-E") + kAxes[k]] = rendered(rot.electric[size_t(k)]);
    r.extras[std::string("rotated-B") + kAxes[k]] = rendered(rot.magnetic[size_t(k)]);
  }
  r.extras["I1"] = rendered(inv.first);
  r.extras["I2"] = rendered(inv.second);
  r.extras["I1-rotated"] = rendered(rinv.first);
  r.extras["I2-rotated"] = rendered(rinv.second);
}

void run_symmetry(Report& r, const VectorField4& x, const ZeroOptions& zo) {
  auto pdes = conformal_pde_residuals(x);
  for (size_t k = 0; k < 12; ++k) {
    char name[8];
    std::snprintf(name, sizeof name, "pde-%02zu", k + 1);
    add_timed(r, "conformal-system", name, [&] { return is_zero(pdes[k], zo); });
  }
  add_timed(r, "conformal-system", "conformal-condition", [&] {
    Mat6Expr m = metric2_conformal_residual(x);
    std::vector<ZeroVerdict> parts;
    parts.reserve(36);
    for (const auto& row : m) {
      for (const auto& e : row) parts.push_back(is_zero(e, zo));
    }
    return aggregate_verdicts(parts);
  });
}

const VectorField4& generator_by_name(const std::string& family) {
  for (const auto& g : conformal_generators()) {
    if (g.name == family) return g.field;
  }
  throw ConfigError("unknown flow family: " + family);
}

FlowMap make_flow(const std::string& family, const ScalarExpr& s) {
  ScalarExpr zero = ScalarExpr::integer(0);
  if (family == "translation-x") return flow_translation({s, zero, zero, zero});
  if (family == "translation-y") return flow_translation({zero, s, zero, zero});
  if (family == "translation-z") return flow_translation({zero, zero, s, zero});
  if (family == "translation-xi") return flow_translation({zero, zero, zero, s});
  if (family == "rotation-xy") return flow_rotation(Plane::XY, s);
  if (family == "rotation-xz") return flow_rotation(Plane::XZ, s);
  if (family == "rotation-yz") return flow_rotation(Plane::YZ, s);
  if (family == "boost-x") return flow_boost(Axis::X, s);
  if (family == "boost-y") return flow_boost(Axis::Y, s);
  if (family == "boost-z") return flow_boost(Axis::Z, s);
  if (family == "dilatation") return flow_dilatation(s);
  if (family == "special-conformal-x")
    return flow_special_conformal({s, zero, zero, zero});
  if (family == "special-conformal-y")
    return flow_special_conformal({zero, s, zero, zero});
  if (family == "special-conformal-z")
    return flow_special_conformal({zero, zero, s, zero});
  if (family == "special-conformal-xi")
    return flow_special_conformal({zero, zero, zero, s});
  throw ConfigError("unknown flow family: " + family);
}

void run_flows(Report& r, const std::string& family, const std::string& param_str,
               const std::string& point_str) {
  ScalarExpr s = parse_constant(param_str, "--param");
  std::array<ScalarExpr, 4> pt = parse_point(point_str);
  RatPoint4 rp;
  {
    std::array<Rat*, 4> slots = {&rp.x, &rp.y, &rp.z, &rp.xi};
    for (size_t i = 0; i < 4; ++i) {
      const Rat* v = pt[i].as_rational();
      if (!v) throw ConfigError("point components must be rational");
      *slots[i] = *v;
    }
  }
  const VectorField4& gen = generator_by_name(family);
  FlowMap flow = make_flow(family, s);

  r.extras["family"] = family;
  r.extras["parameter"] = rendered(s);
  try {
    RatPoint4 img = apply_flow_exact(flow, rp);
    r.extras["mapped-point"] = "(" + img.x.str() + ", " + img.y.str() + ", " +
                               img.z.str() + ", " + img.xi.str() + ")";
  } catch (const NonRationalError&) {
    // Transcendental flow entries: report the numeric image instead.
    Point4 p{static_cast<double>(rp.x), static_cast<double>(rp.y),
             static_cast<double>(rp.z), static_cast<double>(rp.xi)};
    Point4 img = apply_flow(flow, p);
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%.12g, %.12g, %.12g, %.12g)", img.x, img.y,
                  img.z, img.xi);
    r.extras["mapped-point-numeric"] = buf;
  }

  Point4 p{static_cast<double>(rp.x), static_cast<double>(rp.y),
           static_cast<double>(rp.z), static_cast<double>(rp.xi)};
  double sv = eval(s, Point4{});
  double ms = 0;
  ZeroVerdict v = timed(
      [&] {
        double err = flow_consistency(gen, flow, sv, p);
        ZeroVerdict out;
        if (err <= 1e-6) {
          out.kind = ZeroKind::NumericZero;
          out.tolerance = 1e-6;
        } else {
          out.kind = ZeroKind::NonZero;
          out.witness = {{"s", sv},
                         {"x", p.x},
                         {"y", p.y},
                         {"z", p.z},
                         {"xi", p.xi}};
          out.witness_value = err;
        }
        return out;
      },
      ms);
  add_entry(r, "flow-integrator", family, std::move(v), ms);
}

// Exact operator tables ------------------------------------------------

std::vector<IndexTuple> grade_basis(int p) {
  switch (p) {
    case 0: return {IndexTuple{}};
    case 1: return {IndexTuple{1}, IndexTuple{2}, IndexTuple{3}, IndexTuple{4}};
    case 2:
      return {IndexTuple{1, 2}, IndexTuple{1, 3}, IndexTuple{2, 3},
              IndexTuple{1, 4}, IndexTuple{2, 4}, IndexTuple{3, 4}};
    case 3:
      return {IndexTuple{1, 2, 3}, IndexTuple{1, 2, 4}, IndexTuple{1, 3, 4},
              IndexTuple{2, 3, 4}};
    default: return {IndexTuple{1, 2, 3, 4}};
  }
}

std::string cell_string(const ScalarExpr& e) {
  ScalarExpr n = normalize(e);
  if (const Rat* v = n.as_rational()) return v->str();
  return render(n);
}

// Rows are images of the input basis elements, in output basis coordinates.
template <typename Op>
std::vector<std::vector<std::string>> op_matrix(int in_grade, int out_grade, Op&& op) {
  std::vector<std::vector<std::string>> rows;
  for (const IndexTuple& t : grade_basis(in_grade)) {
    auto image = op(t);
    std::vector<std::string> row;
    for (const IndexTuple& u : grade_basis(out_grade)) {
      row.push_back(cell_string(image.coeff(u)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PForm unit_form(const IndexTuple& t) {
  PForm f(4, t.size());
  f.set(t, ScalarExpr::integer(1));
  return f;
}

PVector unit_vector(const IndexTuple& t) {
  PVector v(4, t.size());
  v.set(t, ScalarExpr::integer(1));
  return v;
}

void run_metric_table(Report& r) {
  r.tables["phi"] =
      op_matrix(2, 2, [](const IndexTuple& t) { return complex_structure(unit_form(t)); });
  r.tables["d-operator"] =
      op_matrix(2, 2, [](const IndexTuple& t) { return bivector_raise(unit_form(t)); });

  for (int p = 0; p <= 4; ++p) {
    std::string suffix = "-p" + std::to_string(p);
    r.tables["poincare-down" + suffix] = op_matrix(
        p, 4 - p, [](const IndexTuple& t) { return poincare_down(unit_vector(t)); });
    r.tables["poincare-up" + suffix] = op_matrix(
        p, 4 - p, [](const IndexTuple& t) { return poincare_up(unit_form(t)); });
    r.tables["circledast" + suffix] =
        op_matrix(p, 4 - p, [](const IndexTuple& t) { return hodge_star(unit_form(t)); });
  }

  {
    std::vector<std::string> lam;
    for (int v : lambda_signs()) lam.push_back(std::to_string(v));
    r.tables["lambda"] = {lam};
  }
  for (int p = 1; p <= 4; ++p) {
    std::vector<std::string> diag;
    for (int v : metric_signature(p)) diag.push_back(std::to_string(v));
    r.tables["varphi-p" + std::to_string(p)] = {diag};

    // Full pseudometric matrix on the grade-p basis.
    auto basis = grade_basis(p);
    std::vector<std::vector<std::string>> rows;
    for (const IndexTuple& a : basis) {
      std::vector<std::string> row;
      for (const IndexTuple& b : basis) {
        row.push_back(cell_string(metric(unit_form(a), unit_form(b))));
      }
      rows.push_back(std::move(row));
    }
    r.tables["h-metric-p" + std::to_string(p)] = rows;
  }
}

// Verb drivers ---------------------------------------------------------

void emit(std::ostream& out, const Report& r, const Options& o) {
  if (o.json_out) {
    out << to_json(r);
  } else {
    out << to_text(r);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"symbolic verification of electromagnetic field structures"};
  app.name("emforms");
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--json", opt.json_out, "emit the machine-readable JSON report");
  app.add_flag("--numeric-only", opt.numeric_only,
               "skip symbolic normal forms; decide by numeric sampling only");

  std::string field_path, vf_path, alpha_str, family, param_str = "1";
  std::string point_str = "0,0,0,0", u_str, out_path;

  CLI::App* cm = app.add_subcommand(
      "check-maxwell", "verify a field against the three vacuum formulations");
  cm->add_option("config", field_path, "field configuration JSON file")->required();

  CLI::App* ce = app.add_subcommand(
      "check-eed", "verify a field against the extended vacuum system");
  ce->add_option("config", field_path, "field configuration JSON file")->required();

  CLI::App* du = app.add_subcommand(
      "dualize", "rotate a field through the duality angle and re-verify");
  du->add_option("config", field_path, "field configuration JSON file")->required();
  du->add_option("--alpha", alpha_str, "rotation angle (expression or decimal)")
      ->required();

  CLI::App* iv = app.add_subcommand("invariants",
                                    "report the field invariants and energy quantities");
  iv->add_option("config", field_path, "field configuration JSON file")->required();

  CLI::App* sy = app.add_subcommand(
      "symmetry", "test a vector field against the conformal symmetry system");
  sy->add_option("--field", vf_path, "vector-field configuration JSON file")
      ->required();

  CLI::App* fl = app.add_subcommand(
      "flows", "evaluate a closed-form symmetry flow and check it against the integrator");
  fl->add_option("--family", family, "flow family (a generator name)")->required();
  fl->add_option("--param", param_str, "flow parameter (expression or decimal)");
  fl->add_option("--point", point_str, "start point x,y,z,xi (rational components)");

  CLI::App* mt = app.add_subcommand(
      "metric-table", "dump the exact operator and pseudometric tables");
  mt->add_option("--output", out_path, "also write the JSON report to this file");

  CLI::App* wc = app.add_subcommand(
      "wave-check", "closure of the gradient companion: the wave-operator residual");
  wc->add_option("--u", u_str, "scalar expression in x, y, z, xi")->required();

  std::vector<std::string> argv_copy = args;
  try {
    // CLI11 consumes a reversed argument vector.
    std::reverse(argv_copy.begin(), argv_copy.end());
    app.parse(argv_copy);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Report r;
    r.numeric_only = opt.numeric_only;
    ZeroOptions zo = zero_opts(opt);

    if (cm->parsed()) {
      r.command = "check-maxwell";
      std::string text = read_file(field_path);
      r.input_digest = digest_string(text);
      run_check_maxwell(r, field_from_json_text(text), zo);
    } else if (ce->parsed()) {
      r.command = "check-eed";
      std::string text = read_file(field_path);
      r.input_digest = digest_string(text);
      run_check_eed(r, field_from_json_text(text), zo);
    } else if (du->parsed()) {
      r.command = "dualize";
      std::string text = read_file(field_path);
      r.input_digest = digest_string(text);
      ScalarExpr alpha = parse_constant(alpha_str, "--alpha");
      run_dualize(r, field_from_json_text(text), alpha, zo);
    } else if (iv->parsed()) {
      r.command = "invariants";
      std::string text = read_file(field_path);
      r.input_digest = digest_string(text);
      run_invariants(r, field_from_json_text(text));
    } else if (sy->parsed()) {
      r.command = "symmetry";
      std::string text = read_file(vf_path);
      r.input_digest = digest_string(text);
      run_symmetry(r, vector_field_from_json_text(text), zo);
    } else if (fl->parsed()) {
      r.command = "flows";
      r.input_digest = digest_string(family + "|" + param_str + "|" + point_str);
      run_flows(r, family, param_str, point_str);
    } else if (mt->parsed()) {
      r.command = "metric-table";
      r.input_digest = digest_string("");
      run_metric_table(r);
    } else if (wc->parsed()) {
      r.command = "wave-check";
      r.input_digest = digest_string(u_str);
      ScalarExpr u = [&] {
        try {
          return parse_expr(u_str, /*allow_params=*/true);
        } catch (const ParseError& e) {
          throw ConfigError(std::string("--u: ") + e.what() + " (offset " +
                            std::to_string(e.offset()) + ")");
        }
      }();
      ScalarExpr coeff = wave_coefficient(u);
      add_timed(r, "wave-equation", "coefficient", [&] { return is_zero(coeff, zo); });
      r.extras["coefficient"] = rendered(coeff);
    }

    finalize(r);
    if (mt->parsed() && !out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write file: " + out_path);
      f << to_json(r);
    }
    emit(out, r, opt);
    return exit_code(r);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SingularFlowError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (offset " << e.offset() << ")\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace emforms
