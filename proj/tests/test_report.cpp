#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "emforms/report.hpp"

using namespace emforms;

namespace {

Report sample_report() {
  Report r;
  r.command = "check-maxwell";
  r.input_digest = digest_string("{}");
  r.numeric_only = false;
  ZeroVerdict sym;
  ZeroVerdict num{ZeroKind::NumericZero, 1e-9, {}, 0.0};
  ZeroVerdict bad;
  bad.kind = ZeroKind::NonZero;
  bad.witness = {{"x", 0.25}, {"xi", -1.5}};
  bad.witness_value = 2.0;
  ZeroVerdict ind;
  ind.kind = ZeroKind::Indeterminate;
  add_entry(r, "maxwell-3d", "faraday-1", sym, 0.5);
  add_entry(r, "maxwell-3d", "div-b", num, 0.25);
  add_entry(r, "maxwell-4d", "closure", bad, 1.5);
  add_entry(r, "maxwell-4d", "companion-closure", ind);
  r.extras["invariant-1"] = "0";
  r.tables["phi"] = {{"0", "-1"}, {"1", "0"}};
  finalize(r);
  return r;
}

}  // namespace

TEST_CASE("digest is the 64-bit FNV-1a hash in fixed hex form") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(digest_string("") == "fnv1a:cbf29ce484222325");
  // Standard test vector: fnv1a64("a").
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(digest_string("abc") != digest_string("abd"));
}

TEST_CASE("JSON emission round-trips byte for byte") {
  Report r = sample_report();
  std::string first = to_json(r);
  Report back = report_from_json(first);
  std::string second = to_json(back);
  CHECK(first == second);
  CHECK(back.command == r.command);
  CHECK(back.input_digest == r.input_digest);
  CHECK(back.numeric_only == r.numeric_only);
  REQUIRE(back.entries.size() == r.entries.size());
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    CHECK(back.entries[i].check == r.entries[i].check);
    CHECK(back.entries[i].residual == r.entries[i].residual);
    CHECK(back.entries[i].verdict.kind == r.entries[i].verdict.kind);
  }
  CHECK(back.extras == r.extras);
  CHECK(back.tables == r.tables);
  // The NonZero witness survives.
  CHECK(back.entries[2].verdict.witness.at("x") == 0.25);
  CHECK(back.entries[2].verdict.witness_value == 2.0);
  // The NumericZero tolerance survives.
  CHECK(back.entries[1].verdict.tolerance == 1e-9);
}

TEST_CASE("emitted JSON carries the schema and tool stamps") {
  std::string text = to_json(sample_report());
  CHECK(text.find("\"schema\": \"1\"") != std::string::npos);
  CHECK(text.find("\"tool\": \"emforms 1.0.0\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("malformed report text is rejected") {
  CHECK_THROWS(report_from_json("not json"));
  CHECK_THROWS(report_from_json("{}"));
  CHECK_THROWS(report_from_json("{\"schema\": \"0\"}"));
}

TEST_CASE("exit code reflects the verdict multiset") {
  Report clean;
  clean.command = "invariants";
  add_entry(clean, "a", "r", ZeroVerdict{});
  CHECK(exit_code(clean) == 0);

  Report numeric = clean;
  ZeroVerdict num;
  num.kind = ZeroKind::NumericZero;
  add_entry(numeric, "a", "s", num);
  CHECK(exit_code(numeric) == 0);

  Report indet = numeric;
  ZeroVerdict ind;
  ind.kind = ZeroKind::Indeterminate;
  add_entry(indet, "a", "t", ind);
  CHECK(exit_code(indet) == 3);

  Report broken = indet;
  ZeroVerdict bad;
  bad.kind = ZeroKind::NonZero;
  add_entry(broken, "a", "u", bad);
  CHECK(exit_code(broken) == 1);
}

TEST_CASE("finalize orders suites while preserving residual order") {
  Report r;
  r.command = "c";
  add_entry(r, "zeta", "first", ZeroVerdict{});
  add_entry(r, "alpha", "second", ZeroVerdict{});
  add_entry(r, "zeta", "third", ZeroVerdict{});
  add_entry(r, "alpha", "fourth", ZeroVerdict{});
  finalize(r);
  REQUIRE(r.entries.size() == 4);
  CHECK(r.entries[0].check == "alpha");
  CHECK(r.entries[0].residual == "second");
  CHECK(r.entries[1].residual == "fourth");
  CHECK(r.entries[2].check == "zeta");
  CHECK(r.entries[2].residual == "first");
  CHECK(r.entries[3].residual == "third");
}

TEST_CASE("text rendering names every verdict") {
  std::string text = to_text(sample_report());
  CHECK(text.find("SymbolicZero") != std::string::npos);
  CHECK(text.find("NumericZero") != std::string::npos);
  CHECK(text.find("NonZero") != std::string::npos);
  CHECK(text.find("Indeterminate") != std::string::npos);
  CHECK(text.find("check-maxwell") != std::string::npos);
}
