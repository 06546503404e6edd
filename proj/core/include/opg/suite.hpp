#pragma once

#include <vector>

#include "opg/config.hpp"
#include "opg/report.hpp"

namespace opg {

/// Runs every module's invariant battery at the configured sizes, seeds and
/// tolerances.  Deterministic: identical configs produce identical records.
std::vector<CheckRecord> run_suite(const SuiteConfig& config);

}  // namespace opg
