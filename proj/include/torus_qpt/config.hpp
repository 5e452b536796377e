#pragma once

// Run configuration. Every block keeps only the keys that were given, so a
// parsed config serializes back to the same JSON document; defaults are filled
// in by the resolve_* accessors at execution time.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "torus_qpt/model.hpp"
#include "torus_qpt/ssh.hpp"

namespace tqpt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { spectrum, sweep, scaling, fidelity, square, validate };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);

/// ModelSpec as written in a config; phi is given either in radians ("phi")
/// or as a multiple of pi ("phi_over_pi"), never both.
struct ModelBlock {
  std::optional<std::string> kind;
  std::optional<int> M;
  std::optional<int> N;
  std::optional<double> t;
  std::optional<double> eta;
  std::optional<double> phi;
  std::optional<double> phi_over_pi;

  /// Defaults: honeycomb, M = 7, N = 20, t = 1, eta = 0, phi = 0.
  ModelSpec resolve() const;
};

ModelBlock model_block_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ModelBlock& m);

/// Plain ModelSpec <-> JSON with phi in radians.
nlohmann::json model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);

struct SpectrumBlock {
  std::optional<int> mode;
  std::optional<double> lambda;
  std::optional<double> eta_min;
  std::optional<double> eta_max;
  std::optional<int> steps;
  std::optional<bool> dump_blocks;
};

struct SweepBlock {
  std::optional<double> eta_min;
  std::optional<double> eta_max;
  std::optional<int> steps;
};

struct ScalingBlock {
  std::optional<std::vector<int>> n_list;
  std::optional<int> steps;
};

struct FidelityBlock {
  std::optional<double> lambda;
  std::optional<int> mode;
  std::optional<double> eta_center;
  std::optional<std::vector<double>> delta_grid;
};

struct SquareBlock {
  std::optional<std::vector<int>> n_list;
  std::optional<double> eta_min;
  std::optional<double> eta_max;
  std::optional<int> steps;
};

struct ValidateBlock {
  std::optional<std::map<std::string, double>> tolerances;
};

struct RunConfig {
  std::optional<Command> command;
  std::optional<ModelBlock> model;
  std::optional<std::string> exponent_convention;
  std::optional<std::string> out;
  std::optional<SpectrumBlock> spectrum;
  std::optional<SweepBlock> sweep;
  std::optional<ScalingBlock> scaling;
  std::optional<FidelityBlock> fidelity;
  std::optional<SquareBlock> square;
  std::optional<ValidateBlock> validate;

  ModelSpec resolve_model() const;
  ExponentConvention resolve_convention() const;
  std::string resolve_out() const;

  // Mutable access for flag overrides; creates the block if absent.
  ModelBlock& model_block();
  SpectrumBlock& spectrum_block();
  SweepBlock& sweep_block();
  ScalingBlock& scaling_block();
  FidelityBlock& fidelity_block();
  SquareBlock& square_block();
  ValidateBlock& validate_block();
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
nlohmann::json serialize_config(const RunConfig& c);

}  // namespace tqpt
