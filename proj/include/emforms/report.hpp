#pragma once

// Verification reports: per-residual verdicts with provenance, deterministic
// JSON emission (schema "1") that round-trips byte-identically, and the exit
// code determined by the verdict multiset.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emforms/expr.hpp"

namespace emforms {

inline constexpr std::string_view kToolVersion = "emforms 1.0.0";
inline constexpr std::string_view kReportSchema = "1";

struct ReportEntry {
  std::string check;     // suite name
  std::string residual;  // residual name within the suite
  ZeroVerdict verdict;
  double elapsed_ms = 0.0;
};

struct Report {
  std::string command;       // CLI verb
  std::string input_digest;  // digest of the raw configuration text
  bool numeric_only = false;
  std::vector<ReportEntry> entries;
  // Scalar side values (invariants, mapped points, rotated components),
  // rendered as strings.
  std::map<std::string, std::string> extras;
  // Named tables of exact rational entries, rendered as strings.
  std::map<std::string, std::vector<std::vector<std::string>>> tables;
};

std::uint64_t fnv1a64(std::string_view data);
std::string digest_string(std::string_view data);  // "fnv1a:" + 16 hex digits

void add_entry(Report& r, std::string check, std::string residual,
               ZeroVerdict verdict, double elapsed_ms = 0.0);

// Stable-sorts entries by suite name (residual order within a suite is the
// insertion order).
void finalize(Report& r);

// 1 if any NonZero verdict is present, else 3 if any Indeterminate, else 0.
// (2 is reserved for configuration and parse failures.)
int exit_code(const Report& r);

std::string to_json(const Report& r);
Report report_from_json(const std::string& text);  // throws on malformed input
std::string to_text(const Report& r);

}  // namespace emforms
