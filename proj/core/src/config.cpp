#include "opg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "opg/modular.hpp"

namespace opg {

const std::vector<std::string> KeyValueConfig::empty_;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + text + "'", line);
  }
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    cfg.values_[key].push_back(value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::vector<std::string>& KeyValueConfig::list(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? empty_ : it->second;
}

std::string KeyValueConfig::single(const std::string& key) const {
  const auto& l = list(key);
  if (l.size() != 1)
    throw ConfigInvalid("key '" + key + "' must appear exactly once");
  return l.front();
}

std::optional<std::string> KeyValueConfig::maybe_single(const std::string& key) const {
  const auto& l = list(key);
  if (l.empty()) return std::nullopt;
  if (l.size() > 1) throw ConfigInvalid("key '" + key + "' must not repeat");
  return l.front();
}

Complex parse_complex(const std::string& text) {
  const std::size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) return Complex{std::stod(text), 0.0};
    return Complex{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigInvalid("cannot parse complex number '" + text + "' (want re or re,im)");
  }
}

Tolerances SuiteConfig::tolerances() const {
  Tolerances t;
  t.apply_overrides(tolerance_overrides);
  return t;
}

void Tolerances::apply_overrides(const std::map<std::string, double>& overrides) {
  std::map<std::string, double*> fields = {
      {"hermiticity", &hermiticity},
      {"positivity", &positivity},
      {"reconstruction", &reconstruction},
      {"group_law", &group_law},
      {"isometry", &isometry},
      {"algebra", &algebra},
      {"cross_path", &cross_path},
      {"boolean_criteria", &boolean_criteria},
      {"subspace", &subspace},
      {"three_lines_slack", &three_lines_slack},
      {"state_trace", &state_trace},
      {"faithfulness", &faithfulness},
      {"markov", &markov},
      {"tail_mass", &tail_mass},
  };
  for (const auto& [name, value] : overrides) {
    auto it = fields.find(name);
    if (it == fields.end()) throw ConfigInvalid("unknown tolerance name '" + name + "'");
    *it->second = value;
  }
}

void SuiteConfig::validate() const {
  if (dims.empty()) throw ConfigInvalid("dims list is empty");
  for (std::size_t d : dims)
    if (d == 0 || d > 64) throw ConfigInvalid("dims must lie in 1..64");
  for (double n : n_values)
    if (!(n > 0.0)) throw ConfigInvalid("smearing parameters must be positive");
  for (Complex z : z_values)
    if (std::abs(z.imag()) > 4.0)
      throw ConfigInvalid("|Im z| must be at most 4 (error-budget validity region)");
  if (output_format != "json" && output_format != "csv")
    throw ConfigInvalid("format must be json or csv");
}

SuiteConfig SuiteConfig::from_config(const KeyValueConfig& cfg) {
  SuiteConfig sc;
  if (auto s = cfg.maybe_single("seed")) sc.seed = std::stoull(*s);
  if (cfg.has("dim")) {
    sc.dims.clear();
    for (const auto& v : cfg.list("dim")) sc.dims.push_back(std::stoull(v));
  }
  if (cfg.has("smear_n")) {
    sc.n_values.clear();
    for (const auto& v : cfg.list("smear_n")) sc.n_values.push_back(std::stod(v));
  }
  if (cfg.has("z")) {
    sc.z_values.clear();
    for (const auto& v : cfg.list("z")) sc.z_values.push_back(parse_complex(v));
  }
  for (const auto& v : cfg.list("tol")) {
    const std::size_t eq = v.find('=');
    if (eq == std::string::npos) throw ConfigInvalid("tol override must be name=value");
    sc.tolerance_overrides[trim(v.substr(0, eq))] = std::stod(v.substr(eq + 1));
  }
  if (auto s = cfg.maybe_single("out")) sc.output_path = *s;
  if (auto s = cfg.maybe_single("format")) sc.output_format = *s;
  sc.validate();
  return sc;
}

namespace {

// token split on whitespace
std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

Vec parse_sequence_entries(const KeyValueConfig& cfg, const std::string& key, std::size_t n) {
  Vec x(n, Complex{0.0, 0.0});
  for (const auto& entry : cfg.list(key)) {
    const auto tk = tokens(entry);
    if (tk.size() < 2 || tk.size() > 3)
      throw ConfigInvalid("'" + key + "' entries must be 'index re [im]'");
    const std::size_t k = std::stoull(tk[0]);
    if (k >= n) throw ConfigInvalid("'" + key + "' index out of range");
    x[k] = Complex{std::stod(tk[1]), tk.size() == 3 ? std::stod(tk[2]) : 0.0};
  }
  return x;
}

ComplexMatrix parse_matrix_entries(const KeyValueConfig& cfg, const std::string& key,
                                   std::size_t d, bool hermitian_fill) {
  ComplexMatrix m(d, d);
  for (const auto& entry : cfg.list(key)) {
    const auto tk = tokens(entry);
    if (tk.size() < 3 || tk.size() > 4)
      throw ConfigInvalid("'" + key + "' entries must be 'row col re [im]'");
    const std::size_t j = std::stoull(tk[0]);
    const std::size_t k = std::stoull(tk[1]);
    if (j >= d || k >= d) throw ConfigInvalid("'" + key + "' index out of range");
    const Complex v{std::stod(tk[2]), tk.size() == 4 ? std::stod(tk[3]) : 0.0};
    m(j, k) = v;
    if (hermitian_fill && j != k) m(k, j) = std::conj(v);
  }
  return m;
}

}  // namespace

GroupElementSpec parse_group_element(const KeyValueConfig& cfg) {
  const std::string kind = cfg.single("kind");
  GroupElementSpec spec;
  if (kind == "diagonal" || kind == "corner") {
    DiagonalGroup g;
    for (const auto& v : cfg.list("exponent")) g.exponents.push_back(std::stod(v));
    if (g.exponents.empty()) throw ConfigInvalid("diagonal group needs exponent entries");
    if (auto m = cfg.maybe_single("model"))
      g.model = (*m == "c0") ? SequenceModel::C0 : SequenceModel::Linf;
    const std::size_t n = g.size();
    if (kind == "diagonal") {
      spec.group = g;
      spec.element = parse_sequence_entries(cfg, "x", n);
    } else {
      spec.group = build_corner(g);
      spec.element = CornerElement(parse_sequence_entries(cfg, "a", n),
                                   parse_sequence_entries(cfg, "b", n),
                                   parse_sequence_entries(cfg, "c", n),
                                   parse_sequence_entries(cfg, "d", n));
    }
    return spec;
  }
  if (kind == "implemented") {
    const std::size_t d = std::stoull(cfg.single("dim"));
    ImplementedGroup g(parse_matrix_entries(cfg, "h", d, true));
    spec.group = g;
    spec.element = parse_matrix_entries(cfg, "x", d, false);
    return spec;
  }
  if (kind == "modular") {
    std::vector<double> eigs;
    for (const auto& v : cfg.list("rho_eig")) eigs.push_back(std::stod(v));
    if (eigs.empty()) throw ConfigInvalid("modular group needs rho_eig entries");
    const std::size_t d = eigs.size();
    ComplexMatrix rho = ComplexMatrix::diagonal(std::span<const double>(eigs));
    if (auto s = cfg.maybe_single("rho_seed")) {
      // conjugate by a seeded random unitary (eigenvectors of a random Hermitian)
      Rng rng(std::stoull(*s));
      EigenDecomposition eig = eig_hermitian(random_hermitian(d, rng));
      rho = eig.eigenvectors * rho * eig.eigenvectors.adjoint();
    }
    FaithfulState state(rho);
    spec.group = build_modular_group(state.density());
    spec.element = parse_matrix_entries(cfg, "x", d, false);
    return spec;
  }
  throw ConfigInvalid("unknown group kind '" + kind + "'");
}

}  // namespace opg
