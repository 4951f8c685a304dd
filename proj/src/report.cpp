#include "emforms/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace emforms {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_string(std::string_view data) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string out = "fnv1a:";
  for (int i = 15; i >= 0; --i) out.push_back(hex[(h >> (4 * i)) & 0xf]);
  return out;
}

void add_entry(Report& r, std::string check, std::string residual,
               ZeroVerdict verdict, double elapsed_ms) {
  r.entries.push_back(
      {std::move(check), std::move(residual), std::move(verdict), elapsed_ms});
}

void finalize(Report& r) {
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const ReportEntry& a, const ReportEntry& b) {
                     return a.check < b.check;
                   });
}

int exit_code(const Report& r) {
  bool indeterminate = false;
  for (const auto& e : r.entries) {
    if (e.verdict.kind == ZeroKind::NonZero) return 1;
    if (e.verdict.kind == ZeroKind::Indeterminate) indeterminate = true;
  }
  return indeterminate ? 3 : 0;
}

namespace {

json verdict_to_json(const ZeroVerdict& v) {
  json j;
  j["kind"] = std::string(zero_kind_name(v.kind));
  if (v.kind == ZeroKind::NumericZero) j["tolerance"] = v.tolerance;
  if (v.kind == ZeroKind::NonZero) {
    j["witness"] = json(v.witness);
    j["value"] = v.witness_value;
  }
  return j;
}

ZeroVerdict verdict_from_json(const json& j) {
  ZeroVerdict v;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "SymbolicZero") {
    v.kind = ZeroKind::SymbolicZero;
  } else if (kind == "NumericZero") {
    v.kind = ZeroKind::NumericZero;
    v.tolerance = j.at("tolerance").get<double>();
  } else if (kind == "NonZero") {
    v.kind = ZeroKind::NonZero;
    v.witness = j.at("witness").get<std::map<std::string, double>>();
    v.witness_value = j.at("value").get<double>();
  } else if (kind == "Indeterminate") {
    v.kind = ZeroKind::Indeterminate;
  } else {
    throw std::runtime_error("unknown verdict kind: " + kind);
  }
  return v;
}

}  // namespace

std::string to_json(const Report& r) {
  json j;
  j["schema"] = std::string(kReportSchema);
  j["tool"] = std::string(kToolVersion);
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["numeric_only"] = r.numeric_only;
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["check"] = e.check;
    je["residual"] = e.residual;
    je["verdict"] = verdict_to_json(e.verdict);
    je["elapsed_ms"] = e.elapsed_ms;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["extras"] = json(r.extras);
  j["tables"] = json(r.tables);
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema").get<std::string>() != kReportSchema) {
    throw std::runtime_error("unsupported report schema");
  }
  Report r;
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.numeric_only = j.at("numeric_only").get<bool>();
  for (const auto& je : j.at("entries")) {
    ReportEntry e;
    e.check = je.at("check").get<std::string>();
    e.residual = je.at("residual").get<std::string>();
    e.verdict = verdict_from_json(je.at("verdict"));
    e.elapsed_ms = je.at("elapsed_ms").get<double>();
    r.entries.push_back(std::move(e));
  }
  r.extras = j.at("extras").get<std::map<std::string, std::string>>();
  r.tables = j.at("tables")
                 .get<std::map<std::string, std::vector<std::vector<std::string>>>>();
  return r;
}

std::string to_text(const Report& r) {
  std::string out;
  out += r.command + "  (" + r.input_digest + ")\n";
  for (const auto& e : r.entries) {
    out += "  " + e.check + " / " + e.residual + ": ";
    out += std::string(zero_kind_name(e.verdict.kind));
    if (e.verdict.kind == ZeroKind::NumericZero) {
      out += " (tolerance " + std::to_string(e.verdict.tolerance) + ")";
    } else if (e.verdict.kind == ZeroKind::NonZero) {
      out += " (value " + std::to_string(e.verdict.witness_value) + " at";
      for (const auto& [name, val] : e.verdict.witness) {
        out += " " + name + "=" + std::to_string(val);
      }
      out += ")";
    }
    out += "\n";
  }
  for (const auto& [name, value] : r.extras) {
    out += "  " + name + " = " + value + "\n";
  }
  for (const auto& [name, rows] : r.tables) {
    out += "  " + name + ":\n";
    for (const auto& row : rows) {
      out += "   ";
      for (const auto& cell : row) out += " " + cell;
      out += "\n";
    }
  }
  return out;
}

}  // namespace emforms
