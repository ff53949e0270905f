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

// Command-line front end: runs a scenario from a config file and/or flags,
// or the paper-figures preset, and writes CSV series plus a JSON manifest.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nvbath/errors.hpp"
#include "nvbath/scenario.hpp"
#include "nvbath/spin_algebra.hpp"

namespace {

std::vector<double> parse_number_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw nvbath::ConfigError(key, "'" + item + "' is not a number");
    }
  }
  if (values.empty()) throw nvbath::ConfigError(key, "empty list");
  return values;
}

void export_operators(const std::filesystem::path& dir, const nvbath::EnvironmentModel& env) {
  std::filesystem::create_directories(dir);
  const auto dump = [&](const std::string& name, const nvbath::ComplexMatrix& m) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw nvbath::IoError("cannot write '" + (dir / name).string() + "'");
    nvbath::write_matrix_csv(out, m);
  };
  dump("bath_hamiltonian.csv", nvbath::build_bath_hamiltonian(env).matrix());
  dump("coupling_operator.csv", nvbath::build_coupling_operator(env).matrix());
  dump("initial_bath_state.csv", nvbath::initial_bath_state(env).matrix());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit-environment Negativity and conditional-state Fidelity for an NV center "
               "in a 13C nuclear bath"};

  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> outdir;
  std::optional<std::string> qubit;
  std::optional<std::string> bz;
  std::optional<std::string> polarizations;
  std::optional<double> tmax;
  std::optional<int> steps;
  std::optional<std::string> coupling_form;
  std::optional<int> nuclei;
  std::string export_env;
  std::string export_ops;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("--config", config_path, "YAML/JSON config file or a previous run manifest")
      ->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "Named preset")->check(CLI::IsMember({"paper-figures"}));
  app.add_option("--seed", seed, "Bath placement seed");
  app.add_option("--outdir", outdir, "Output directory");
  app.add_option("--qubit", qubit, "Qubit choice")->check(CLI::IsMember({"01", "-11", "both"}));
  app.add_option("--bz", bz, "Magnetic field(s) in tesla, comma separated");
  app.add_option("--polarizations", polarizations, "Bath polarization(s), comma separated");
  app.add_option("--tmax", tmax, "Final time in microseconds");
  app.add_option("--steps", steps, "Number of grid points (>= 3)");
  app.add_option("--coupling-form", coupling_form, "Hyperfine tensor form")
      ->check(CLI::IsMember({"standard", "paper"}));
  app.add_option("--nuclei", nuclei, "Number of 13C nuclei (1-10)");
  app.add_option("--threads", threads, "Worker threads per series")->check(CLI::PositiveNumber);
  app.add_option("--export-env", export_env, "Also write nucleus positions/couplings CSV here");
  app.add_option("--export-operators", export_ops,
                 "Also write H_E, V and R(0) as CSV matrices into this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    nvbath::ScenarioConfig config;
    if (preset == "paper-figures") {
      config = nvbath::paper_figures_config(outdir.value_or("paper_figures"), seed.value_or(1));
    } else {
      if (!config_path.empty()) config = nvbath::load_config(config_path);
      if (seed) config.seed = *seed;
      if (outdir) config.output_path = *outdir;
      if (qubit) {
        config.qubits = (*qubit == "both")
                            ? std::vector{nvbath::QubitChoice::zero_one(),
                                          nvbath::QubitChoice::minus_one_one()}
                            : std::vector{nvbath::parse_qubit(*qubit)};
      }
      if (bz) config.b_z = parse_number_list(*bz, "b_z");
      if (polarizations) config.polarizations = parse_number_list(*polarizations, "polarizations");
      if (tmax) config.t_max = *tmax;
      if (steps) config.n_steps = *steps;
      if (coupling_form) config.coupling_form = nvbath::parse_coupling_form(*coupling_form);
      if (nuclei) config.nucleus_count = *nuclei;
    }
    config.validate();

    nvbath::ScenarioResult result = nvbath::run_scenario(config, threads);
    if (preset == "paper-figures") {
      nvbath::write_summary_json(std::filesystem::path(config.output_path) / "summary.json",
                                 result);
    }
    if (!export_env.empty()) {
      std::ofstream out(export_env, std::ios::binary);
      if (!out) throw nvbath::IoError("cannot write '" + export_env + "'");
      nvbath::write_environment_csv(out, result.environment);
    }
    if (!export_ops.empty()) {
      const double p = config.polarizations.front();
      const double b = config.b_z.front();
      export_operators(export_ops, nvbath::with_field(
                                       nvbath::set_uniform_polarization(result.environment, p), b));
    }
    std::cout << "wrote " << result.series.size() << " series and " << result.manifest.string()
              << '\n';
  } catch (const nvbath::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const nvbath::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
