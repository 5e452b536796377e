// torus-qpt: command-line front end.
//
//   torus-qpt <command> [--config file.json] [--out dir] [overrides...]
//
// Precedence: built-in defaults < config file < command-line flags.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torus_qpt/commands.hpp"
#include "torus_qpt/config.hpp"

namespace {

struct Flags {
  std::string command;
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::string> kind;
  std::optional<int> M;
  std::optional<int> N;
  std::optional<double> t;
  std::optional<double> eta;
  std::optional<double> phi;
  std::optional<double> phi_over_pi;
  std::optional<std::string> convention;
  std::optional<double> eta_min;
  std::optional<double> eta_max;
  std::optional<int> steps;
  std::optional<double> lambda;
  std::optional<int> mode;
  std::optional<double> eta_center;
  std::vector<int> n_list;
  bool dump_blocks = false;
  bool print_config = false;
};

tqpt::RunConfig load(const Flags& f) {
  tqpt::RunConfig cfg;
  if (f.config_path) {
    std::ifstream in(*f.config_path);
    if (!in) throw tqpt::ConfigError("cannot read config file " + *f.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = tqpt::parse_config_text(ss.str());
  }
  cfg.command = tqpt::command_from_string(f.command);
  if (f.out) cfg.out = f.out;
  if (f.convention) cfg.exponent_convention = f.convention;

  if (f.kind || f.M || f.N || f.t || f.eta || f.phi || f.phi_over_pi) {
    auto& m = cfg.model_block();
    if (f.kind) m.kind = f.kind;
    if (f.M) m.M = f.M;
    if (f.N) m.N = f.N;
    if (f.t) m.t = f.t;
    if (f.eta) m.eta = f.eta;
    if (f.phi && f.phi_over_pi) throw tqpt::ConfigError("give either --phi or --phi-over-pi, not both");
    if (f.phi) {
      m.phi = f.phi;
      m.phi_over_pi.reset();
    }
    if (f.phi_over_pi) {
      m.phi_over_pi = f.phi_over_pi;
      m.phi.reset();
    }
  }

  using tqpt::Command;
  const Command c = *cfg.command;
  const bool range_flags = f.eta_min || f.eta_max || f.steps;
  if (c == Command::spectrum && (range_flags || f.lambda || f.mode || f.dump_blocks)) {
    auto& b = cfg.spectrum_block();
    if (f.eta_min) b.eta_min = f.eta_min;
    if (f.eta_max) b.eta_max = f.eta_max;
    if (f.steps) b.steps = f.steps;
    if (f.lambda) b.lambda = f.lambda, b.mode.reset();
    if (f.mode) b.mode = f.mode, b.lambda.reset();
    if (f.dump_blocks) b.dump_blocks = true;
  } else if (c == Command::sweep && range_flags) {
    auto& b = cfg.sweep_block();
    if (f.eta_min) b.eta_min = f.eta_min;
    if (f.eta_max) b.eta_max = f.eta_max;
    if (f.steps) b.steps = f.steps;
  } else if (c == Command::scaling && (f.steps || !f.n_list.empty())) {
    auto& b = cfg.scaling_block();
    if (f.steps) b.steps = f.steps;
    if (!f.n_list.empty()) b.n_list = f.n_list;
  } else if (c == Command::square && (range_flags || !f.n_list.empty())) {
    auto& b = cfg.square_block();
    if (f.eta_min) b.eta_min = f.eta_min;
    if (f.eta_max) b.eta_max = f.eta_max;
    if (f.steps) b.steps = f.steps;
    if (!f.n_list.empty()) b.n_list = f.n_list;
  } else if (c == Command::fidelity && (f.lambda || f.mode || f.eta_center)) {
    auto& b = cfg.fidelity_block();
    if (f.lambda) b.lambda = f.lambda, b.mode.reset();
    if (f.mode) b.mode = f.mode, b.lambda.reset();
    if (f.eta_center) b.eta_center = f.eta_center;
  }
  // Re-validate the merged document.
  return tqpt::parse_config(tqpt::serialize_config(cfg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight-binding tori with a tunable seam: spectra, curvature sweeps, scaling and fidelity"};
  Flags f;
  app.add_option("command", f.command, "spectrum | sweep | scaling | fidelity | square | validate")
      ->required()
      ->check(CLI::IsMember({"spectrum", "sweep", "scaling", "fidelity", "square", "validate"}));
  app.add_option("--config", f.config_path, "JSON run configuration");
  app.add_option("--out", f.out, "output directory (default: current directory)");
  app.add_option("--kind", f.kind, "honeycomb | square");
  app.add_option("--M", f.M, "number of rows around the circumference");
  app.add_option("--N", f.N, "ring length");
  app.add_option("--t", f.t, "hopping energy");
  app.add_option("--eta", f.eta, "boundary coupling");
  app.add_option("--phi", f.phi, "flux phase in radians");
  app.add_option("--phi-over-pi", f.phi_over_pi, "flux phase in units of pi");
  app.add_option("--convention", f.convention, "cells | sites")
      ->check(CLI::IsMember({"cells", "sites"}));
  app.add_option("--eta-min", f.eta_min, "lower end of the eta grid");
  app.add_option("--eta-max", f.eta_max, "upper end of the eta grid");
  app.add_option("--steps", f.steps, "number of eta grid intervals");
  app.add_option("--lambda", f.lambda, "ring hopping ratio (spectrum, fidelity)");
  app.add_option("--mode", f.mode, "momentum index m in 1..M (spectrum, fidelity)");
  app.add_option("--eta-center", f.eta_center, "fidelity centre (default: gap minimum)");
  app.add_option("--n-list", f.n_list, "ring lengths (scaling, square)");
  app.add_flag("--dump-blocks", f.dump_blocks, "also write blocks.csv (spectrum)");
  app.add_flag("--print-config", f.print_config, "print the merged configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tqpt::kExitConfigError;
  }

  try {
    const tqpt::RunConfig cfg = load(f);
    if (f.print_config) {
      std::cout << tqpt::serialize_config(cfg).dump(2) << "\n";
      return tqpt::kExitOk;
    }
    const tqpt::CommandResult r = tqpt::run_command(cfg);
    if (!r.summary.empty()) std::cout << r.summary << "\n";
    for (const auto& p : r.files) std::cout << "wrote " << p.string() << "\n";
    return r.exit_code;
  } catch (const tqpt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return tqpt::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tqpt::kExitCheckFailure;
  }
}
