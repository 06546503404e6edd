#include "opg/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace opg {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_json(const std::vector<CheckRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["claim"] = r.claim;
    row["inputs"] = r.inputs;
    row["residual"] = r.residual;
    row["tolerance"] = r.tolerance;
    row["pass"] = r.pass;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_csv(const std::vector<CheckRecord>& records) {
  std::ostringstream out;
  out << "name,claim,inputs,residual,tolerance,pass\r\n";
  for (const auto& r : records) {
    out << csv_quote(r.name) << ',' << csv_quote(r.claim) << ',' << csv_quote(r.inputs) << ','
        << format_double(r.residual) << ',' << format_double(r.tolerance) << ','
        << (r.pass ? "true" : "false") << "\r\n";
  }
  return out.str();
}

std::string to_summary(const std::vector<CheckRecord>& records, bool use_color) {
  const char* green = use_color ? "\033[32m" : "";
  const char* red = use_color ? "\033[31m" : "";
  const char* reset = use_color ? "\033[0m" : "";
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& r : records) {
    if (r.pass) ++passed;
    out << (r.pass ? green : red) << (r.pass ? "PASS" : "FAIL") << reset << "  " << r.name
        << "  residual " << format_double(r.residual) << " (tol " << format_double(r.tolerance)
        << ")  [" << r.inputs << "]\n";
  }
  out << passed << "/" << records.size() << " checks passed\n";
  return out.str();
}

bool all_pass(const std::vector<CheckRecord>& records) {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

}  // namespace opg
