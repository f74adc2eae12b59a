// nrq: command-line front end for the two-qubit nonreciprocity simulator.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant
// violation, 4 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "nrq/config.hpp"
#include "nrq/csv.hpp"
#include "nrq/dynamics.hpp"
#include "nrq/error.hpp"
#include "nrq/experiments.hpp"
#include "nrq/observables.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

int exit_code_for(nrq::ErrorKind kind) {
  using nrq::ErrorKind;
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::UnknownPreset:
    case ErrorKind::BadIndex:
    case ErrorKind::NegativeRate:
    case ErrorKind::BadWavelength:
    case ErrorKind::BadEnergy:
      return kExitConfig;
    case ErrorKind::IoError:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nrq::Error(nrq::ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_kv(const std::string& key, double value) {
  std::cout << key << " = " << nrq::format_number(value) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonreciprocal two-qubit master-equation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string figure_id;
  double J = 1.0;
  double gamma = 2.0;
  double phi = 0.0;

  auto* evolve = app.add_subcommand("evolve", "Integrate one trajectory described by a config file");
  evolve->add_option("--config", config_path, "Config file (key = value)")->required();
  evolve->add_option("--out", out_dir, "Output directory");

  auto* figure = app.add_subcommand("figure", "Regenerate a figure dataset (2a..6d, or 'all')");
  figure->add_option("id", figure_id, "Figure id")->required();
  figure->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Evaluate an observable on a two-parameter grid");
  sweep->add_option("--config", config_path, "Sweep config file")->required();
  sweep->add_option("--out", out_dir, "Output directory");

  auto* steady = app.add_subcommand("steady", "Solve for the steady state of a configured model");
  steady->add_option("--config", config_path, "Config file (key = value)")->required();

  auto* isolation = app.add_subcommand("isolation", "Print damping forces and the isolation ratio");
  isolation->add_option("--J", J, "Coherent coupling")->required();
  isolation->add_option("--Gamma", gamma, "Collective decay rate")->required();
  isolation->add_option("--phi", phi, "Propagation phase (radians)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*evolve) {
      const auto cfg = nrq::parse_config(read_file(config_path));
      for (const auto& path : nrq::run_experiment(cfg, out_dir)) std::cout << path.string() << '\n';
    } else if (*figure) {
      if (figure_id == "all") {
        for (auto id : nrq::all_figures()) std::cout << nrq::run_figure(id, out_dir).string() << '\n';
      } else {
        const auto id = nrq::parse_figure_id(figure_id);
        if (!id) throw nrq::Error(nrq::ErrorKind::UnknownPreset, "unknown figure id '" + figure_id + "'");
        std::cout << nrq::run_figure(*id, out_dir).string() << '\n';
      }
    } else if (*sweep) {
      const auto cfg = nrq::parse_sweep_config(read_file(config_path));
      const auto table = nrq::run_sweep(cfg.sweep, cfg.model);
      std::filesystem::create_directories(out_dir);
      const auto path = std::filesystem::path(out_dir) / cfg.output_path;
      nrq::write_csv(table, path);
      std::cout << path.string() << '\n';
    } else if (*steady) {
      const auto cfg = nrq::parse_config(read_file(config_path));
      const auto result = nrq::steady_state(nrq::build_liouvillian(cfg.model));
      const auto [p1, p2] = nrq::populations(result.state);
      const auto collective = nrq::collective_populations(result.state);
      std::cout << "unique = " << (result.unique ? "true" : "false") << '\n';
      print_kv("spectral_gap", result.spectral_gap);
      print_kv("residual", result.residual);
      print_kv("P1", p1);
      print_kv("P2", p2);
      print_kv("C", nrq::concurrence(result.state));
      print_kv("P_E", collective.P_E);
      print_kv("P_plus", collective.P_plus);
      print_kv("P_minus", collective.P_minus);
      print_kv("P_G", collective.P_G);
    } else if (*isolation) {
      const auto report = nrq::damping_forces(nrq::Complex{J, 0.0}, gamma, phi);
      print_kv("F12", report.F12);
      print_kv("F21", report.F21);
      print_kv("delta_F", report.delta_F);
    }
  } catch (const nrq::Error& e) {
    std::cerr << "nrq: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "nrq: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
