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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nvbath/dynamics.hpp"
#include "nvbath/entanglement_metrics.hpp"
#include "nvbath/env_model.hpp"

namespace nvbath {

inline constexpr std::string_view kSoftwareVersion = "nvbath 0.1.0";

struct ScenarioConfig {
  std::uint64_t seed = 1;
  int nucleus_count = 5;
  std::vector<QubitChoice> qubits{QubitChoice::zero_one(), QubitChoice::minus_one_one()};
  std::vector<double> b_z{0.0, 0.2};
  std::vector<double> polarizations{0.1, 0.4, 0.7, 1.0};
  double t_max = 50.0;  // microseconds
  int n_steps = 501;    // grid points including t = 0 and t = t_max
  QubitAmplitudes amplitudes;
  double r_min = 2.5;  // Angstrom
  double r_max = 8.0;
  CouplingForm coupling_form = CouplingForm::standard;
  PhysicalConstants constants;
  std::string output_path = "nvbath_out";

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Parses a YAML (or JSON) document. Missing keys keep their defaults, unknown
// keys are rejected. A run manifest is accepted too: its "config" member is
// used. Errors carry the key and, for syntax errors, the line.
ScenarioConfig validate_config(std::string_view raw);
ScenarioConfig load_config(const std::filesystem::path& path);

// JSON echo of every config field. Feeding it back through validate_config
// reproduces the same config exactly (doubles are printed round-trip safe).
std::string config_to_json(const ScenarioConfig& config);

// e.g. "series_q01_bz0.2_p0.7.csv".
std::string series_filename(QubitChoice qubit, double b_z, double p);

// Columns t_us, negativity, one_minus_fidelity, coherence_mod,
// commutator_norm, d_negativity_dt, d_one_minus_fidelity_dt; 12 significant
// digits, LF endings.
void write_series_csv(std::ostream& out, const MetricSeries& series);

struct SeriesRecord {
  QubitChoice qubit;
  double b_z = 0.0;
  double polarization = 0.0;
  std::filesystem::path file;
  MetricSeries series;
};

struct ScenarioResult {
  EnvironmentModel environment;  // polarization 0, field 0
  std::vector<SeriesRecord> series;
  std::filesystem::path manifest;
};

// One environment from the seed, reused for every (qubit, b_z, p)
// combination; one CSV per combination plus manifest.json, written last.
ScenarioResult run_scenario(const ScenarioConfig& config, unsigned threads = 1);

ScenarioConfig paper_figures_config(const std::filesystem::path& outdir, std::uint64_t seed);

// K = 5, p in {0.1, 0.4, 0.7, 1}, B_z in {0, 0.2 T}, both qubits, equal
// superposition, default grid; also writes summary.json.
ScenarioResult paper_figures(const std::filesystem::path& outdir, std::uint64_t seed,
                             unsigned threads = 1);

// Per series: max N, max 1 - F, derivative sign agreement and the N vs 1 - F fit.
void write_summary_json(const std::filesystem::path& path, const ScenarioResult& result);

}  // namespace nvbath
