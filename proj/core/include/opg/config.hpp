#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opg/groups.hpp"
#include "opg/tolerances.hpp"

namespace opg {

/// Flat `key = value` text; repeated keys form lists.  Lines starting with
/// '#' and blank lines are skipped.  Raises ParseError with the line number.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig from_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::vector<std::string>& list(const std::string& key) const;
  std::string single(const std::string& key) const;  // throws if repeated
  std::optional<std::string> maybe_single(const std::string& key) const;

 private:
  std::map<std::string, std::vector<std::string>> values_;
  static const std::vector<std::string> empty_;
};

/// Parameters of the verification suite.
struct SuiteConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> dims = {2, 3, 4, 6};
  std::vector<double> n_values = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<Complex> z_values = {{0.0, -0.5}, {0.0, -1.0}, {0.0, 1.0}, {1.0, -1.0}, {0.5, 2.0}};
  std::map<std::string, double> tolerance_overrides;
  std::string output_path;           // empty: stdout only
  std::string output_format = "json";  // json | csv

  /// Resolved tolerances after overrides.
  Tolerances tolerances() const;

  /// Validates the error-budget region: nonempty dims <= 64, |Im z| <= 4.
  void validate() const;

  /// Reads keys seed, dim, smear_n, z, tol, out, format from a parsed config;
  /// keys that are absent keep their defaults.
  static SuiteConfig from_config(const KeyValueConfig& cfg);
};

/// A group plus one matching element, parsed from config text.  Supported
/// kinds: diagonal, implemented, modular, corner (see the README schema).
struct GroupElementSpec {
  std::variant<DiagonalGroup, ImplementedGroup, EmbeddedCornerGroup> group;
  std::variant<Vec, ComplexMatrix, CornerElement> element;
};

GroupElementSpec parse_group_element(const KeyValueConfig& cfg);

/// "re,im" or plain "re".
Complex parse_complex(const std::string& text);

}  // namespace opg
