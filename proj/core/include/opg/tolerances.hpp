#pragma once

#include <map>
#include <string>

namespace opg {

/// Central record of all default numerical tolerances.  Every comparison in
/// the library reads from one of these fields so that a single override map
/// (see SuiteConfig) can retune the whole suite.
struct Tolerances {
  double hermiticity = 1e-12;      // relative symmetry defect allowed on input
  double positivity = 1e-12;       // min eigenvalue vs max eigenvalue
  double reconstruction = 1e-10;   // eigendecomposition residual, relative
  double group_law = 1e-10;        // alpha_s alpha_t = alpha_{s+t}
  double isometry = 1e-10;         // norm preservation
  double algebra = 1e-9;           // multiplicativity / star compatibility
  double cross_path = 1e-8;        // quadrature vs spectral calculus
  double boolean_criteria = 1e-7;  // graph membership style yes/no decisions
  double subspace = 1e-9;          // subspace equality residuals
  double three_lines_slack = 1e-9; // additive slack on the strip bound
  double state_trace = 1e-10;      // |trace(rho) - 1|
  double faithfulness = 1e-8;      // min eigenvalue of a faithful state
  double markov = 1e-8;            // intertwiner residuals
  double tail_mass = 1e-12;        // certified quadrature tail bound

  /// Applies `name = value` overrides; throws ConfigInvalid on unknown names.
  void apply_overrides(const std::map<std::string, double>& overrides);
};

}  // namespace opg
