#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "opg/config.hpp"
#include "opg/continuation.hpp"
#include "opg/graphs.hpp"
#include "opg/modular.hpp"
#include "opg/report.hpp"
#include "opg/smearing.hpp"
#include "opg/suite.hpp"

namespace {

bool color_enabled() { return std::getenv("NO_COLOR") == nullptr; }

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw opg::ConfigInvalid("cannot write to " + path);
  out << content;
}

std::string render(const std::vector<opg::CheckRecord>& records, const std::string& format) {
  return format == "csv" ? opg::to_csv(records) : opg::to_json(records);
}

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::vector<std::string> tol_overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

opg::SuiteConfig resolve_suite_config(const CommonFlags& flags) {
  opg::SuiteConfig cfg;
  if (!flags.config_path.empty())
    cfg = opg::SuiteConfig::from_config(opg::KeyValueConfig::from_file(flags.config_path));
  if (flags.seed_set) cfg.seed = flags.seed;
  if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
  if (flags.format != "json") cfg.output_format = flags.format;
  for (const auto& t : flags.tol_overrides) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw opg::ConfigInvalid("--tol expects NAME=VALUE");
    cfg.tolerance_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

int cmd_verify(const CommonFlags& flags) {
  const opg::SuiteConfig cfg = resolve_suite_config(flags);
  const auto records = opg::run_suite(cfg);
  if (!cfg.output_path.empty())
    write_output(cfg.output_path, render(records, cfg.output_format));
  std::cout << opg::to_summary(records, color_enabled());
  return opg::all_pass(records) ? 0 : 1;
}

int cmd_continue(const CommonFlags& flags, const std::string& z_text, double smear_n) {
  if (flags.config_path.empty())
    throw opg::ConfigInvalid("continue needs --config with a group and element spec");
  const opg::Complex z = opg::parse_complex(z_text);
  const auto spec =
      opg::parse_group_element(opg::KeyValueConfig::from_file(flags.config_path));

  std::vector<opg::CheckRecord> records;
  auto run = [&](const auto& group, const auto& element) {
    const auto direct = opg::alpha_z_spectral(group, z, element);
    const auto r = opg::SmearingOperator::standard(smear_n, group, z);
    const auto shifted = opg::smear_shifted(r, group, z, element);
    const auto smeared_direct = opg::smear(r, group, direct);
    const opg::Vec lhs = opg::flatten(group, shifted);
    const opg::Vec rhs = opg::flatten(group, smeared_direct);
    double s = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) s += std::norm(lhs[i] - rhs[i]);
    const double scale =
        std::max({opg::carrier_norm(group, element), opg::carrier_norm(group, direct), 1.0});
    const double discrepancy = std::sqrt(s) / scale;

    std::cout << "alpha_z(x) coordinates (spectral path):\n";
    const opg::Vec coords = opg::flatten(group, direct);
    for (std::size_t i = 0; i < coords.size(); ++i)
      std::cout << "  [" << i << "] " << opg::format_double(coords[i].real()) << " + "
                << opg::format_double(coords[i].imag()) << "i\n";
    std::cout << "path discrepancy (shifted quadrature vs R_n of the spectral value): "
              << opg::format_double(discrepancy) << "\n";
    records.push_back({"continue",
                       "alpha_z(R_n x) by contour shift equals R_n(alpha_z x)",
                       "z=" + z_text + " n=" + opg::format_double(smear_n), discrepancy, 1e-8,
                       discrepancy <= 1e-8});
  };
  std::visit(
      [&](const auto& group) {
        using G = std::decay_t<decltype(group)>;
        if constexpr (std::is_same_v<G, opg::DiagonalGroup>)
          run(group, std::get<opg::Vec>(spec.element));
        else if constexpr (std::is_same_v<G, opg::ImplementedGroup>)
          run(group, std::get<opg::ComplexMatrix>(spec.element));
        else
          run(group, std::get<opg::CornerElement>(spec.element));
      },
      spec.group);
  if (!flags.out_path.empty()) write_output(flags.out_path, render(records, flags.format));
  return opg::all_pass(records) ? 0 : 1;
}

int cmd_counterexample(const CommonFlags& flags, std::size_t n_min, std::size_t n_max,
                       std::size_t components, int k_power) {
  const auto f = opg::CounterexampleF::power_schedule(std::max(components, n_max), components,
                                                      k_power);
  const auto weights = opg::dyadic_weights(components);
  const auto weak = opg::counterexample_weak_continuity(f, weights, n_max);

  std::ostringstream csv;
  csv << "n,norm_gap,weak_pairing\r\n";
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const double gap = opg::counterexample_norm_gap(f, n);
    const double pairing = n >= 2 ? weak.pairings[n - 2] : 0.0;
    csv << n << ',' << opg::format_double(gap) << ',' << opg::format_double(pairing) << "\r\n";
  }
  write_output(flags.out_path, csv.str());
  return 0;
}

int cmd_demo(const std::string& name) {
  const opg::Complex minus_i{0.0, -1.0};
  if (name == "corner-gap") {
    auto corner = opg::build_corner(opg::DiagonalGroup::integer_model(8));
    for (double log_r : {-1.0, -2.0}) {
      auto seq = opg::GeometricSequence::with_log_ratio({1.0, 0.0}, log_r, 0);
      auto rep = opg::graph_intersection_check(corner, seq, minus_i);
      std::cout << "x_n = e^{" << log_r << " n} (n >= 0):\n"
                << "  in c0-model domain:   " << (rep.seq_in_c0_domain ? "yes" : "no") << "\n"
                << "  in linf-model domain: " << (rep.seq_in_linf_domain ? "yes" : "no") << "\n"
                << "  image in c0 model:    " << (rep.image_in_c0 ? "yes" : "no") << "\n"
                << "  image in linf model:  " << (rep.image_in_linf ? "yes" : "no") << "\n"
                << "  strict domain gap:    " << (rep.strict_gap ? "yes" : "no") << "\n";
    }
    return 0;
  }
  if (name == "hinfty") {
    std::vector<double> lambda = {0.0, std::log(2.0), std::log(4.0)};
    opg::ImplementedGroup g(opg::ComplexMatrix::diagonal(std::span<const double>(lambda)));
    auto h = opg::hinfty_basis(g);
    std::cout << "p = (1, 2, 4); units with p_k / p_j <= 1 (lower triangular):\n";
    for (std::size_t i = 0; i < h.units.size(); ++i)
      std::cout << "  e_{" << h.units[i].first + 1 << h.units[i].second + 1 << "}  ratio "
                << opg::format_double(h.ratios[i]) << "\n";
    std::cout << h.units.size() << " of " << h.dim * h.dim << " units included\n";
    return 0;
  }
  if (name == "kaplansky") {
    auto corner = opg::build_corner(opg::DiagonalGroup::integer_model(16));
    auto seq = opg::GeometricSequence::with_log_ratio({1.0, 0.0}, -1.0, 0);
    opg::CornerElement x(opg::Vec(16), seq.truncate(16), opg::Vec(16), opg::Vec(16));
    auto rep = opg::kaplansky_truncation(corner, x, {2, 4, 8, 12, 16});
    std::cout << "b-corner = (e^{-n}); truncation net in the unit graph ball:\n";
    for (std::size_t i = 0; i < rep.cutoffs.size(); ++i)
      std::cout << "  cutoff " << rep.cutoffs[i] << ": graph norm "
                << opg::format_double(rep.graph_norms[i]) << ", max entry distance "
                << opg::format_double(rep.entry_distance[i]) << "\n";
    std::cout << (rep.pass ? "all truncations stayed in the ball\n"
                           : "a truncation left the ball\n");
    return rep.pass ? 0 : 1;
  }
  if (name == "kms") {
    std::vector<double> eigs = {2.0 / 3.0, 1.0 / 3.0};
    opg::FaithfulState state(opg::ComplexMatrix::diagonal(std::span<const double>(eigs)));
    opg::ModularData md = opg::build_modular(state);
    auto a = opg::ComplexMatrix::unit(2, 0, 1);
    auto good = 2.0 * opg::ComplexMatrix::unit(2, 0, 1);
    auto bad = opg::ComplexMatrix::unit(2, 0, 1);
    std::cout << "rho = diag(2/3, 1/3), a = e_{12}\n"
              << "  verify_kms(a, 2 e_{12}): " << (opg::verify_kms(md, a, good) ? "true" : "false")
              << "\n"
              << "  verify_kms(a, e_{12}):   " << (opg::verify_kms(md, a, bad) ? "true" : "false")
              << "\n";
    return 0;
  }
  if (name == "modular") {
    std::vector<double> eigs = {2.0 / 3.0, 1.0 / 3.0};
    opg::FaithfulState state(opg::ComplexMatrix::diagonal(std::span<const double>(eigs)));
    opg::ModularData md = opg::build_modular(state);
    std::cout << "rho = diag(2/3, 1/3)\n"
              << "  Delta(e_{12}) = " << opg::format_double(
                     md.delta_pow({1.0, 0.0}, opg::ComplexMatrix::unit(2, 0, 1))(0, 1).real())
              << " e_{12}\n"
              << "  Delta(e_{21}) = " << opg::format_double(
                     md.delta_pow({1.0, 0.0}, opg::ComplexMatrix::unit(2, 1, 0))(1, 0).real())
              << " e_{21}\n"
              << "  S Lambda(x) = Lambda(x*) defect: "
              << opg::format_double(md.construction_residual()) << "\n";
    return 0;
  }
  std::cerr << "unknown demo '" << name
            << "'; available: corner-gap, hinfty, kaplansky, kms, modular\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for one-parameter isometry groups, analytic generators, "
               "Gaussian smearing, and finite-dimensional modular theory"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "config file (flat key = value)");
    cmd->add_option("--out", flags.out_path, "report output path");
    cmd->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", flags.tol_overrides, "tolerance override NAME=VALUE (repeatable)");
    cmd->add_option("--seed", flags.seed, "random seed")->each([&](const std::string&) {
      flags.seed_set = true;
    });
  };

  auto* verify = app.add_subcommand("verify", "run every module's invariant battery");
  add_common(verify);

  auto* cont = app.add_subcommand("continue", "evaluate alpha_z(x) by both paths");
  add_common(cont);
  std::string z_text = "0,-1";
  double smear_n = 1.0;
  cont->add_option("--z", z_text, "strip anchor, re,im")->required();
  cont->add_option("--smear-n", smear_n, "Gaussian sharpness for the quadrature path");

  auto* cex = app.add_subcommand("counterexample",
                                 "norm gap vs weak pairing of the boundary function");
  add_common(cex);
  std::size_t n_min = 2, n_max = 50, components = 64;
  int k_power = 3;
  cex->add_option("--n-min", n_min, "first boundary index");
  cex->add_option("--n-max", n_max, "last boundary index");
  cex->add_option("--components", components, "evaluation truncation N");
  cex->add_option("--k-power", k_power, "schedule k_n = n^power");

  auto* demo = app.add_subcommand("demo", "named demonstration");
  std::string demo_name;
  demo->add_option("name", demo_name, "corner-gap | hinfty | kaplansky | kms | modular")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(flags);
    if (cont->parsed()) return cmd_continue(flags, z_text, smear_n);
    if (cex->parsed()) return cmd_counterexample(flags, n_min, n_max, components, k_power);
    if (demo->parsed()) return cmd_demo(demo_name);
  } catch (const opg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const opg::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const opg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
