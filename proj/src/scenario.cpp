// Copyright 2026 The nvbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nvbath/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "format.hpp"
#include "nvbath/errors.hpp"

namespace nvbath {

namespace fs = std::filesystem;
using nlohmann::json;

void ScenarioConfig::validate() const {
  if (nucleus_count < 1 || nucleus_count > kMaxNuclei) {
    throw ConfigError("nucleus_count", "must be in [1, " + std::to_string(kMaxNuclei) + "]");
  }
  if (qubits.empty()) throw ConfigError("qubit", "at least one qubit choice is required");
  if (b_z.empty()) throw ConfigError("b_z", "at least one field value is required");
  if (polarizations.empty()) {
    throw ConfigError("polarizations", "at least one polarization is required");
  }
  for (double b : b_z) {
    if (!std::isfinite(b)) throw ConfigError("b_z", "field values must be finite");
  }
  for (double p : polarizations) {
    if (!(std::abs(p) <= 1.0)) {
      throw ConfigError("polarizations",
                        "value " + detail::format_g(p, 12) + " is outside [-1, 1]");
    }
  }
  const auto has_duplicates = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_duplicates(b_z)) throw ConfigError("b_z", "duplicate field values");
  if (has_duplicates(polarizations)) throw ConfigError("polarizations", "duplicate values");
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw ConfigError("qubit", "duplicate qubit choice");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max", "must be positive");
  if (n_steps < 3) {
    throw ConfigError("n_steps", "must be at least 3 (central differences need 3 points)");
  }
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw ConfigError("shell", "require 0 < r_min < r_max");
  }
  try {
    amplitudes.validate();
  } catch (const DomainError& e) {
    throw ConfigError("amplitudes", e.what());
  }
  constants.validate();
  if (output_path.empty()) throw ConfigError("output_path", "must not be empty");
}

namespace {

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& key, const char* expected) {
  if (!node.IsScalar()) {
    throw ConfigError(key, std::string("expected ") + expected);
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, std::string("expected ") + expected + ", got '" + node.Scalar() + "'");
  }
}

std::vector<double> number_list(const YAML::Node& node, const std::string& key) {
  std::vector<double> out;
  if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(scalar_as<double>(item, key, "a number"));
  } else {
    out.push_back(scalar_as<double>(node, key, "a number or a list of numbers"));
  }
  return out;
}

Complex complex_value(const YAML::Node& node, const std::string& key) {
  if (node.IsSequence()) {
    if (node.size() != 2) throw ConfigError(key, "expected [re, im]");
    return {scalar_as<double>(node[0], key, "a number"), scalar_as<double>(node[1], key, "a number")};
  }
  return {scalar_as<double>(node, key, "a number or [re, im]"), 0.0};
}

void reject_unknown(const YAML::Node& map, std::initializer_list<std::string_view> known,
                    const std::string& prefix) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(prefix + key, "unknown key");
    }
  }
}

std::vector<QubitChoice> qubit_list(const YAML::Node& node) {
  std::vector<std::string> names;
  if (node.IsSequence()) {
    for (const auto& item : node) names.push_back(scalar_as<std::string>(item, "qubit", "a string"));
  } else {
    names.push_back(scalar_as<std::string>(node, "qubit", "'01', '-11' or 'both'"));
  }
  std::vector<QubitChoice> out;
  for (const auto& name : names) {
    if (name == "both") {
      out.push_back(QubitChoice::zero_one());
      out.push_back(QubitChoice::minus_one_one());
    } else {
      out.push_back(parse_qubit(name));
    }
  }
  return out;
}

ScenarioConfig config_from_node(const YAML::Node& root) {
  ScenarioConfig c;
  if (!root || root.IsNull()) {
    return c;
  }
  if (!root.IsMap()) {
    throw ConfigError("", "config document must be a key-value mapping");
  }
  if (root["config"]) {
    return config_from_node(root["config"]);
  }
  reject_unknown(root,
                 {"seed", "nucleus_count", "qubit", "b_z", "polarizations", "t_max", "n_steps",
                  "amplitudes", "shell", "coupling_form", "output_path", "constants"},
                 "");

  if (const auto n = root["seed"]) {
    const auto seed = scalar_as<long long>(n, "seed", "a non-negative integer");
    if (seed < 0) throw ConfigError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (const auto n = root["nucleus_count"]) c.nucleus_count = scalar_as<int>(n, "nucleus_count", "an integer");
  if (const auto n = root["qubit"]) c.qubits = qubit_list(n);
  if (const auto n = root["b_z"]) c.b_z = number_list(n, "b_z");
  if (const auto n = root["polarizations"]) c.polarizations = number_list(n, "polarizations");
  if (const auto n = root["t_max"]) c.t_max = scalar_as<double>(n, "t_max", "a number");
  if (const auto n = root["n_steps"]) c.n_steps = scalar_as<int>(n, "n_steps", "an integer");
  if (const auto n = root["coupling_form"]) {
    c.coupling_form = parse_coupling_form(scalar_as<std::string>(n, "coupling_form", "a string"));
  }
  if (const auto n = root["output_path"]) {
    c.output_path = scalar_as<std::string>(n, "output_path", "a path");
  }
  if (const auto n = root["amplitudes"]) {
    if (!n.IsMap()) throw ConfigError("amplitudes", "expected a mapping with keys a and b");
    reject_unknown(n, {"a", "b"}, "amplitudes.");
    if (n["a"]) c.amplitudes.a = complex_value(n["a"], "amplitudes.a");
    if (n["b"]) c.amplitudes.b = complex_value(n["b"], "amplitudes.b");
  }
  if (const auto n = root["shell"]) {
    if (!n.IsMap()) throw ConfigError("shell", "expected a mapping with keys r_min and r_max");
    reject_unknown(n, {"r_min", "r_max"}, "shell.");
    if (n["r_min"]) c.r_min = scalar_as<double>(n["r_min"], "shell.r_min", "a number");
    if (n["r_max"]) c.r_max = scalar_as<double>(n["r_max"], "shell.r_max", "a number");
  }
  if (const auto n = root["constants"]) {
    if (!n.IsMap()) throw ConfigError("constants", "expected a mapping");
    reject_unknown(n, {"delta_zfs", "gamma_e", "gamma_n", "mu0_over_4pi", "lattice_constant"},
                   "constants.");
    auto& k = c.constants;
    if (n["delta_zfs"]) k.delta_zfs = scalar_as<double>(n["delta_zfs"], "constants.delta_zfs", "a number");
    if (n["gamma_e"]) k.gamma_e = scalar_as<double>(n["gamma_e"], "constants.gamma_e", "a number");
    if (n["gamma_n"]) k.gamma_n = scalar_as<double>(n["gamma_n"], "constants.gamma_n", "a number");
    if (n["mu0_over_4pi"]) {
      k.mu0_over_4pi = scalar_as<double>(n["mu0_over_4pi"], "constants.mu0_over_4pi", "a number");
    }
    if (n["lattice_constant"]) {
      k.lattice_constant =
          scalar_as<double>(n["lattice_constant"], "constants.lattice_constant", "a number");
    }
  }
  return c;
}

json constants_json(const PhysicalConstants& k) {
  return {{"delta_zfs", k.delta_zfs},
          {"gamma_e", k.gamma_e},
          {"gamma_n", k.gamma_n},
          {"mu0_over_4pi", k.mu0_over_4pi},
          {"lattice_constant", k.lattice_constant}};
}

json config_json(const ScenarioConfig& c) {
  json qubits = json::array();
  for (const auto& q : c.qubits) qubits.push_back(std::string(to_string(q)));
  return {{"seed", c.seed},
          {"nucleus_count", c.nucleus_count},
          {"qubit", qubits},
          {"b_z", c.b_z},
          {"polarizations", c.polarizations},
          {"t_max", c.t_max},
          {"n_steps", c.n_steps},
          {"amplitudes",
           {{"a", {c.amplitudes.a.real(), c.amplitudes.a.imag()}},
            {"b", {c.amplitudes.b.real(), c.amplitudes.b.imag()}}}},
          {"shell", {{"r_min", c.r_min}, {"r_max", c.r_max}}},
          {"coupling_form", std::string(to_string(c.coupling_form))},
          {"output_path", c.output_path},
          {"constants", constants_json(c.constants)}};
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

void write_manifest(const fs::path& path, const ScenarioConfig& config,
                    const ScenarioResult& result) {
  json nuclei = json::array();
  for (std::size_t k = 0; k < result.environment.nuclei.size(); ++k) {
    const auto& n = result.environment.nuclei[k];
    nuclei.push_back({{"index", k}, {"position_A", n.position}, {"coupling_MHz", n.coupling}});
  }
  json series = json::array();
  for (const auto& s : result.series) {
    series.push_back({{"file", s.file.filename().string()},
                      {"qubit", std::string(to_string(s.qubit))},
                      {"b_z", s.b_z},
                      {"polarization", s.polarization}});
  }
  json constants = constants_json(config.constants);
  constants["planck"] = kPlanck;
  constants["dipolar_prefactor_MHz_A3"] = dipolar_prefactor(config.constants);

  const json manifest = {
      {"software", std::string(kSoftwareVersion)},
      {"config", config_json(config)},
      {"constants", constants},
      {"environment",
       {{"basis_order", "product z-basis, nucleus 0 most significant, |up> first"},
        {"units", "Angstrom, MHz; H in angular MHz, t in microseconds"},
        {"nuclei", nuclei}}},
      {"grid",
       {{"t_max", config.t_max},
        {"points", config.n_steps},
        {"dt", config.t_max / static_cast<double>(config.n_steps - 1)}}},
      {"series", series}};
  auto out = open_output(path);
  out << manifest.dump(2) << '\n';
  finish(out, path);
}

}  // namespace

ScenarioConfig validate_config(std::string_view raw) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(raw));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", "parse error at line " + std::to_string(e.mark.line + 1) + ", column " +
                              std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  ScenarioConfig c = config_from_node(root);
  c.validate();
  return c;
}

ScenarioConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return validate_config(buffer.str());
}

std::string config_to_json(const ScenarioConfig& config) { return config_json(config).dump(2); }

std::string series_filename(QubitChoice qubit, double b_z, double p) {
  return "series_q" + std::string(to_string(qubit)) + "_bz" + detail::format_g(b_z, 12) + "_p" +
         detail::format_g(p, 12) + ".csv";
}

void write_series_csv(std::ostream& out, const MetricSeries& series) {
  out << "t_us,negativity,one_minus_fidelity,coherence_mod,commutator_norm,d_negativity_dt,"
         "d_one_minus_fidelity_dt\n";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const auto& p = series.points[i];
    const double cells[] = {p.t,
                            p.negativity,
                            p.one_minus_fidelity,
                            p.coherence_mod,
                            p.commutator_norm,
                            series.d_negativity_dt[i],
                            series.d_one_minus_fidelity_dt[i]};
    for (std::size_t c = 0; c < std::size(cells); ++c) {
      if (c > 0) out << ',';
      out << detail::format_g(cells[c], 12);
    }
    out << '\n';
  }
}

ScenarioResult run_scenario(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  ScenarioResult result;
  result.environment = generate_bath(config.seed, config.nucleus_count, config.r_min,
                                     config.r_max, config.constants, config.coupling_form);

  const fs::path outdir(config.output_path);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec || !fs::is_directory(outdir)) {
    throw IoError("cannot create output directory '" + outdir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
  }

  const std::vector<double> grid = uniform_grid(config.t_max, config.n_steps);
  for (const QubitChoice qubit : config.qubits) {
    for (const double b : config.b_z) {
      for (const double p : config.polarizations) {
        const EnvironmentModel env =
            with_field(set_uniform_polarization(result.environment, p), b);
        SeriesRecord record{qubit, b, p, outdir / series_filename(qubit, b, p),
                            metric_series(env, qubit, config.amplitudes, grid, threads)};
        auto out = open_output(record.file);
        write_series_csv(out, record.series);
        finish(out, record.file);
        result.series.push_back(std::move(record));
      }
    }
  }

  result.manifest = outdir / "manifest.json";
  write_manifest(result.manifest, config, result);
  return result;
}

ScenarioConfig paper_figures_config(const fs::path& outdir, std::uint64_t seed) {
  ScenarioConfig c;
  c.seed = seed;
  c.nucleus_count = 5;
  c.qubits = {QubitChoice::zero_one(), QubitChoice::minus_one_one()};
  c.b_z = {0.0, 0.2};
  c.polarizations = {0.1, 0.4, 0.7, 1.0};
  c.output_path = outdir.string();
  return c;
}

ScenarioResult paper_figures(const fs::path& outdir, std::uint64_t seed, unsigned threads) {
  ScenarioResult result = run_scenario(paper_figures_config(outdir, seed), threads);
  write_summary_json(outdir / "summary.json", result);
  return result;
}

void write_summary_json(const fs::path& path, const ScenarioResult& result) {
  json entries = json::array();
  for (const auto& s : result.series) {
    double max_n = 0.0;
    double max_omf = 0.0;
    for (const auto& p : s.series.points) {
      max_n = std::max(max_n, p.negativity);
      max_omf = std::max(max_omf, p.one_minus_fidelity);
    }
    const SignAgreement agreement = derivative_sign_agreement(s.series);
    const ProportionalityFit fit = proportionality_fit(s.series);
    entries.push_back({{"file", s.file.filename().string()},
                       {"qubit", std::string(to_string(s.qubit))},
                       {"b_z", s.b_z},
                       {"polarization", s.polarization},
                       {"max_negativity", max_n},
                       {"max_one_minus_fidelity", max_omf},
                       {"sign_agreement_fraction", agreement.fraction},
                       {"sign_agreement_points", agreement.compared},
                       {"fit_slope", fit.slope},
                       {"mean_ratio", fit.mean_ratio}});
  }
  const json summary = {{"software", std::string(kSoftwareVersion)},
                        {"derivative_threshold_per_us", kDerivativeThreshold},
                        {"series", entries}};
  auto out = open_output(path);
  out << summary.dump(2) << '\n';
  finish(out, path);
}

}  // namespace nvbath
