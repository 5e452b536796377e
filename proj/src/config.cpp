#include "torus_qpt/config.hpp"

#include <algorithm>
#include <initializer_list>
#include <numbers>
#include <type_traits>

namespace tqpt {

using nlohmann::json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
    case Command::scaling: return "scaling";
    case Command::fidelity: return "fidelity";
    case Command::square: return "square";
    case Command::validate: return "validate";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::spectrum, Command::sweep, Command::scaling, Command::fidelity,
                    Command::square, Command::validate}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& out, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  // get<int>() would silently truncate 1.5; integer fields must be integers.
  if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  } else if constexpr (std::is_same_v<T, std::vector<int>>) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError(where + "." + key + ": expected a list of integers");
    }
  }
  try {
    out = v.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <class T>
void write(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

ModelSpec ModelBlock::resolve() const {
  ModelSpec s;
  s.kind = kind ? lattice_kind_from_string(*kind) : LatticeKind::honeycomb;
  s.M = M.value_or(7);
  s.N = N.value_or(20);
  s.t = t.value_or(1.0);
  s.eta = eta.value_or(0.0);
  if (phi && phi_over_pi) throw ConfigError("model: give either phi or phi_over_pi, not both");
  s.phi = phi ? *phi : phi_over_pi.value_or(0.0) * std::numbers::pi;
  return s;
}

ModelBlock model_block_from_json(const json& j) {
  const std::string where = "model";
  check_keys(j, {"kind", "M", "N", "t", "eta", "phi", "phi_over_pi"}, where);
  ModelBlock m;
  read(j, "kind", m.kind, where);
  read(j, "M", m.M, where);
  read(j, "N", m.N, where);
  read(j, "t", m.t, where);
  read(j, "eta", m.eta, where);
  read(j, "phi", m.phi, where);
  read(j, "phi_over_pi", m.phi_over_pi, where);
  if (m.phi && m.phi_over_pi) throw ConfigError("model: give either phi or phi_over_pi, not both");
  try {
    m.resolve().validate();
  } catch (const InvalidModel& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return m;
}

json to_json(const ModelBlock& m) {
  json j = json::object();
  write(j, "kind", m.kind);
  write(j, "M", m.M);
  write(j, "N", m.N);
  write(j, "t", m.t);
  write(j, "eta", m.eta);
  write(j, "phi", m.phi);
  write(j, "phi_over_pi", m.phi_over_pi);
  return j;
}

json model_to_json(const ModelSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind))}, {"M", spec.M}, {"N", spec.N},
          {"t", spec.t}, {"eta", spec.eta}, {"phi", spec.phi}};
}

ModelSpec model_from_json(const json& j) {
  for (const char* key : {"kind", "M", "N"}) {
    if (!j.contains(key)) throw ConfigError(std::string("model: missing key '") + key + "'");
  }
  if (j.contains("phi") == j.contains("phi_over_pi")) {
    throw ConfigError("model: exactly one of phi and phi_over_pi is required");
  }
  return model_block_from_json(j).resolve();
}

ModelSpec RunConfig::resolve_model() const { return model ? model->resolve() : ModelBlock{}.resolve(); }

ExponentConvention RunConfig::resolve_convention() const {
  return exponent_convention ? exponent_convention_from_string(*exponent_convention)
                             : ExponentConvention::cells;
}

std::string RunConfig::resolve_out() const { return out.value_or("."); }

ModelBlock& RunConfig::model_block() { return model ? *model : model.emplace(); }
SpectrumBlock& RunConfig::spectrum_block() { return spectrum ? *spectrum : spectrum.emplace(); }
SweepBlock& RunConfig::sweep_block() { return sweep ? *sweep : sweep.emplace(); }
ScalingBlock& RunConfig::scaling_block() { return scaling ? *scaling : scaling.emplace(); }
FidelityBlock& RunConfig::fidelity_block() { return fidelity ? *fidelity : fidelity.emplace(); }
SquareBlock& RunConfig::square_block() { return square ? *square : square.emplace(); }
ValidateBlock& RunConfig::validate_block() { return validate ? *validate : validate.emplace(); }

RunConfig parse_config(const json& j) {
  check_keys(j, {"command", "model", "exponent_convention", "out", "spectrum", "sweep", "scaling",
                 "fidelity", "square", "validate"},
             "config");
  RunConfig c;
  std::optional<std::string> command;
  read(j, "command", command, "config");
  if (command) c.command = command_from_string(*command);
  if (j.contains("model")) c.model = model_block_from_json(j.at("model"));
  read(j, "exponent_convention", c.exponent_convention, "config");
  if (c.exponent_convention) {
    try {
      exponent_convention_from_string(*c.exponent_convention);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  read(j, "out", c.out, "config");

  if (j.contains("spectrum")) {
    const auto& b = j.at("spectrum");
    check_keys(b, {"mode", "lambda", "eta_min", "eta_max", "steps", "dump_blocks"}, "spectrum");
    SpectrumBlock s;
    read(b, "mode", s.mode, "spectrum");
    read(b, "lambda", s.lambda, "spectrum");
    read(b, "eta_min", s.eta_min, "spectrum");
    read(b, "eta_max", s.eta_max, "spectrum");
    read(b, "steps", s.steps, "spectrum");
    read(b, "dump_blocks", s.dump_blocks, "spectrum");
    if (s.mode && s.lambda) throw ConfigError("spectrum: give either mode or lambda, not both");
    c.spectrum = s;
  }
  if (j.contains("sweep")) {
    const auto& b = j.at("sweep");
    check_keys(b, {"eta_min", "eta_max", "steps"}, "sweep");
    SweepBlock s;
    read(b, "eta_min", s.eta_min, "sweep");
    read(b, "eta_max", s.eta_max, "sweep");
    read(b, "steps", s.steps, "sweep");
    c.sweep = s;
  }
  if (j.contains("scaling")) {
    const auto& b = j.at("scaling");
    check_keys(b, {"n_list", "steps"}, "scaling");
    ScalingBlock s;
    read(b, "n_list", s.n_list, "scaling");
    read(b, "steps", s.steps, "scaling");
    c.scaling = s;
  }
  if (j.contains("fidelity")) {
    const auto& b = j.at("fidelity");
    check_keys(b, {"lambda", "mode", "eta_center", "delta_grid"}, "fidelity");
    FidelityBlock s;
    read(b, "lambda", s.lambda, "fidelity");
    read(b, "mode", s.mode, "fidelity");
    read(b, "eta_center", s.eta_center, "fidelity");
    read(b, "delta_grid", s.delta_grid, "fidelity");
    if (s.mode && s.lambda) throw ConfigError("fidelity: give either mode or lambda, not both");
    c.fidelity = s;
  }
  if (j.contains("square")) {
    const auto& b = j.at("square");
    check_keys(b, {"n_list", "eta_min", "eta_max", "steps"}, "square");
    SquareBlock s;
    read(b, "n_list", s.n_list, "square");
    read(b, "eta_min", s.eta_min, "square");
    read(b, "eta_max", s.eta_max, "square");
    read(b, "steps", s.steps, "square");
    c.square = s;
  }
  if (j.contains("validate")) {
    const auto& b = j.at("validate");
    check_keys(b, {"tolerances"}, "validate");
    ValidateBlock s;
    read(b, "tolerances", s.tolerances, "validate");
    c.validate = s;
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json serialize_config(const RunConfig& c) {
  json j = json::object();
  if (c.command) j["command"] = std::string(to_string(*c.command));
  if (c.model) j["model"] = to_json(*c.model);
  write(j, "exponent_convention", c.exponent_convention);
  write(j, "out", c.out);
  if (c.spectrum) {
    json b = json::object();
    write(b, "mode", c.spectrum->mode);
    write(b, "lambda", c.spectrum->lambda);
    write(b, "eta_min", c.spectrum->eta_min);
    write(b, "eta_max", c.spectrum->eta_max);
    write(b, "steps", c.spectrum->steps);
    write(b, "dump_blocks", c.spectrum->dump_blocks);
    j["spectrum"] = b;
  }
  if (c.sweep) {
    json b = json::object();
    write(b, "eta_min", c.sweep->eta_min);
    write(b, "eta_max", c.sweep->eta_max);
    write(b, "steps", c.sweep->steps);
    j["sweep"] = b;
  }
  if (c.scaling) {
    json b = json::object();
    write(b, "n_list", c.scaling->n_list);
    write(b, "steps", c.scaling->steps);
    j["scaling"] = b;
  }
  if (c.fidelity) {
    json b = json::object();
    write(b, "lambda", c.fidelity->lambda);
    write(b, "mode", c.fidelity->mode);
    write(b, "eta_center", c.fidelity->eta_center);
    write(b, "delta_grid", c.fidelity->delta_grid);
    j["fidelity"] = b;
  }
  if (c.square) {
    json b = json::object();
    write(b, "n_list", c.square->n_list);
    write(b, "eta_min", c.square->eta_min);
    write(b, "eta_max", c.square->eta_max);
    write(b, "steps", c.square->steps);
    j["square"] = b;
  }
  if (c.validate) {
    json b = json::object();
    write(b, "tolerances", c.validate->tolerances);
    j["validate"] = b;
  }
  return j;
}

}  // namespace tqpt
