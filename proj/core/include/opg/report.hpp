#pragma once

#include <string>
#include <vector>

namespace opg {

/// One verified fact: which check ran, the identity it verifies (the
/// traceability anchor carried by every serialised row), a digest of the
/// inputs, and the measured outcome.
struct CheckRecord {
  std::string name;    // e.g. "smearing/closed_form"
  std::string claim;   // the identity or bound being checked
  std::string inputs;  // parameter digest, e.g. "seed=42 dim=3 n=1"
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Deterministic float formatting (%.17g); reports must be byte-identical
/// for identical configs.
std::string format_double(double v);

/// Flat JSON array of records, no nesting.
std::string to_json(const std::vector<CheckRecord>& records);

/// RFC-4180 CSV with a header row.
std::string to_csv(const std::vector<CheckRecord>& records);

/// Human-readable per-record lines plus a summary; honours NO_COLOR.
std::string to_summary(const std::vector<CheckRecord>& records, bool use_color);

bool all_pass(const std::vector<CheckRecord>& records);

}  // namespace opg
