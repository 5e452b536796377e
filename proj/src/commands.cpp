#include "torus_qpt/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "torus_qpt/bloch.hpp"
#include "torus_qpt/criticality.hpp"
#include "torus_qpt/eigensolve.hpp"
#include "torus_qpt/format.hpp"
#include "torus_qpt/validate.hpp"

namespace tqpt {

namespace fs = std::filesystem;

namespace {

fs::path emit(CommandResult& result, const RunConfig& config, const std::string& name,
              const std::string& content) {
  const fs::path path = fs::path(config.resolve_out()) / name;
  write_file_atomic(path, content);
  result.files.push_back(path);
  return path;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

double selected_lambda(const ModelSpec& model, std::optional<int> mode, std::optional<double> lambda,
                       double fallback) {
  if (lambda) return *lambda;
  if (!mode) return fallback;
  if (*mode < 1 || *mode > model.M) {
    throw ConfigError("invalid mode index " + std::to_string(*mode) + " (expected 1.." +
                      std::to_string(model.M) + ")");
  }
  const double k = mode_momentum(*mode, model.M);
  return model.kind == LatticeKind::honeycomb ? honeycomb_lambda(k) : square_lambda(k);
}

CommandResult cmd_spectrum(const RunConfig& config) {
  const ModelSpec model = config.resolve_model();
  const SpectrumBlock block = config.spectrum.value_or(SpectrumBlock{});
  const double lambda = selected_lambda(model, block.mode, block.lambda, 0.5);
  const double eta_min = block.eta_min.value_or(0.0);
  const double eta_max = block.eta_max.value_or(1.0);
  const int steps = block.steps.value_or(100);
  if (steps < 1 || !(eta_max >= eta_min)) throw ConfigError("spectrum: need steps >= 1 and eta_max >= eta_min");

  CommandResult result;
  std::vector<double> etas;
  std::vector<std::vector<double>> levels;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_gap_eta = eta_min;
  const int N = model.N;
  for (int i = 0; i <= steps; ++i) {
    const double eta = eta_min + (eta_max - eta_min) * i / steps;
    const ComplexMatrix ring = model.kind == LatticeKind::honeycomb
                                   ? peierls_ring(lambda, N, eta, model.phi, model.t)
                                   : uniform_ring(lambda, N, eta, model.phi, model.t);
    auto v = eigenvalues(ring);
    if (N >= 2) {
      const double gap = v[N / 2] - v[N / 2 - 1];
      if (gap < min_gap) {
        min_gap = gap;
        min_gap_eta = eta;
      }
    }
    etas.push_back(eta);
    levels.push_back(std::move(v));
  }
  emit(result, config, "spectrum.csv", band_csv(etas, levels));
  if (block.dump_blocks.value_or(false)) {
    emit(result, config, "blocks.csv", blocks_csv(bloch_blocks(model)));
  }
  std::ostringstream os;
  os.precision(10);
  os << "ring lambda=" << lambda << " N=" << N << ": smallest central gap " << min_gap
     << " at eta=" << min_gap_eta;
  result.summary = os.str();
  return result;
}

CommandResult cmd_sweep(const RunConfig& config) {
  const ModelSpec model = config.resolve_model();
  const ExponentConvention conv = config.resolve_convention();
  const SweepBlock block = config.sweep.value_or(SweepBlock{});
  const EtaRange range = default_eta_range(model, conv);
  const SweepResult r = sweep(model, block.eta_min.value_or(range.min),
                              block.eta_max.value_or(range.max), block.steps.value_or(256), conv);

  CommandResult result;
  emit(result, config, "sweep.csv", sweep_csv(r));
  nlohmann::ordered_json summary;
  summary["eta_m"] = r.eta_m;
  summary["peak"] = r.peak;
  summary["eta_m_analytic"] = r.eta_m_analytic;
  summary["peak_analytic"] = r.peak_analytic;
  summary["step"] = r.step;
  summary["peak_not_bracketed"] = r.peak_not_bracketed;
  summary["first_order"] = r.first_order;
  summary["warnings"] = r.warnings;
  emit(result, config, "sweep_summary.json", dump(summary));

  std::ostringstream os;
  os.precision(10);
  os << "eta_m=" << r.eta_m << " peak=" << r.peak;
  for (const auto& w : r.warnings) os << "\nwarning: " << w;
  result.summary = os.str();
  return result;
}

CommandResult cmd_scaling(const RunConfig& config) {
  const ModelSpec model = config.resolve_model();
  const ScalingBlock block = config.scaling.value_or(ScalingBlock{});
  const std::vector<int> n_list = block.n_list.value_or(std::vector<int>{8, 12, 16, 20, 24});
  CommandResult result;
  try {
    const ScalingReport rep = scaling_scan(model.M, model.phi, model.t, n_list,
                                           config.resolve_convention(), block.steps.value_or(256));
    emit(result, config, "scaling.json", dump(scaling_json(rep)));
    std::ostringstream os;
    os.precision(6);
    os << "ln eta_m = " << rep.fit_eta.slope << " N + " << rep.fit_eta.intercept
       << " (R^2=" << rep.fit_eta.r2 << ")\nln|peak| = " << rep.fit_peak.slope << " N + "
       << rep.fit_peak.intercept << " (R^2=" << rep.fit_peak.r2 << ")";
    result.summary = os.str();
  } catch (const PeakNotBracketed& e) {
    result.exit_code = kExitCheckFailure;
    result.summary = e.what();
  }
  return result;
}

CommandResult cmd_fidelity(const RunConfig& config) {
  const ModelSpec model = config.resolve_model();
  const ExponentConvention conv = config.resolve_convention();
  const FidelityBlock block = config.fidelity.value_or(FidelityBlock{});
  const double lambda = selected_lambda(model, block.mode, block.lambda, 0.5);
  if (!(std::abs(lambda) < 1.0)) throw ConfigError("fidelity: the ring needs |lambda| < 1");

  const double c = corner_coupling(lambda, model.N, conv);
  const double eta_center = block.eta_center.value_or(c * std::cos(model.phi));
  std::vector<double> deltas;
  if (block.delta_grid) {
    deltas = *block.delta_grid;
  } else {
    double s = std::abs(c * std::sin(model.phi));
    if (s == 0.0) s = std::abs(c);
    // Geometric grid from 1e-6 s up to 10 s, 8 points per decade.
    for (int i = 0; i <= 56; ++i) deltas.push_back(s * 1e-6 * std::pow(10.0, i / 8.0));
  }
  const RingParams ring{lambda, model.N, model.phi, model.t};
  const FidelityCurve curve = fidelity_exact(ring, eta_center, deltas, conv);

  CommandResult result;
  emit(result, config, "fidelity.csv", fidelity_csv(curve));
  double worst = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    worst = std::max(worst, std::abs(curve.f_exact[i] - curve.f_perturbative[i]));
  }
  std::ostringstream os;
  os << "fidelity around eta=" << eta_center << ": max |F_exact - F_perturbative| = " << worst;
  result.summary = os.str();
  return result;
}

CommandResult cmd_square(const RunConfig& config) {
  ModelSpec model = config.resolve_model();
  model.kind = LatticeKind::square;
  const SquareBlock block = config.square.value_or(SquareBlock{});
  const std::vector<int> n_list = block.n_list.value_or(std::vector<int>{8, 16, 32});
  const double eta_min = block.eta_min.value_or(0.0);
  const double eta_max = block.eta_max.value_or(1.0);
  const int steps = block.steps.value_or(128);

  CommandResult result;
  std::vector<double> peaks;
  std::vector<double> eta_ms;
  for (int N : n_list) {
    ModelSpec s = model;
    s.N = N;
    const SweepResult r = sweep(s, eta_min, eta_max, steps, config.resolve_convention());
    emit(result, config, "square_N" + std::to_string(N) + ".csv", sweep_csv(r));
    double peak = 0.0;
    for (double v : r.d2_numeric) peak = std::max(peak, std::abs(v));
    peaks.push_back(peak);
    eta_ms.push_back(r.eta_m);
  }
  const auto [lo, hi] = std::minmax_element(peaks.begin(), peaks.end());
  const double ratio = peaks.empty() ? 1.0 : *hi / *lo;
  const bool flat = ratio <= 2.0;

  nlohmann::ordered_json report;
  report["n_values"] = n_list;
  report["peak_abs_d2"] = peaks;
  report["eta_m"] = eta_ms;
  report["ratio"] = ratio;
  report["flat"] = flat;
  emit(result, config, "square_report.json", dump(report));

  std::ostringstream os;
  os << "square lattice peak |d2 E_g| ratio across N: " << ratio << (flat ? " (flat)" : " (NOT flat)");
  result.summary = os.str();
  result.exit_code = flat ? kExitOk : kExitCheckFailure;
  return result;
}

CommandResult cmd_validate(const RunConfig& config) {
  std::map<std::string, double> overrides;
  if (config.validate && config.validate->tolerances) overrides = *config.validate->tolerances;
  const ValidationReport rep = run_validation(config.resolve_convention(), overrides);
  CommandResult result;
  emit(result, config, "validate.json", dump(validation_json(rep)));
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << format_double(c.measured)
       << " tolerance=" << format_double(c.tolerance) << "\n";
  }
  os << (rep.pass ? "all checks passed" : "some checks FAILED") << " in " << rep.runtime_s << " s";
  result.summary = os.str();
  result.exit_code = rep.pass ? kExitOk : kExitCheckFailure;
  return result;
}

CommandResult run_command(const RunConfig& config) {
  if (!config.command) throw ConfigError("no command given");
  try {
    switch (*config.command) {
      case Command::spectrum: return cmd_spectrum(config);
      case Command::sweep: return cmd_sweep(config);
      case Command::scaling: return cmd_scaling(config);
      case Command::fidelity: return cmd_fidelity(config);
      case Command::square: return cmd_square(config);
      case Command::validate: return cmd_validate(config);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unhandled command");
}

}  // namespace tqpt
