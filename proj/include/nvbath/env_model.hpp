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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nvbath {

using Vec3 = std::array<double, 3>;

// Physical constants in the units the rest of the library expects.
struct PhysicalConstants {
  double delta_zfs = 2.87;          // GHz; never enters a propagator
  double gamma_e = 28.08;           // GHz/T
  double gamma_n = 10.71;           // MHz/T, 13C
  double mu0_over_4pi = 1e-7;       // T^2 m^3 / J
  double lattice_constant = 3.567;  // Angstrom, diamond

  // Throws ConfigError naming the first non-positive field.
  void validate() const;
};

// Planck constant, J s (exact SI value).
inline constexpr double kPlanck = 6.62607015e-34;

// Largest bath the dense kernels accept (joint dimension 2^11).
inline constexpr int kMaxNuclei = 10;

// Angular orientation dependence of the secular dipolar coupling.
//   standard:      A^{z,j} = C/r^3 (delta_{zj} - 3 r_j r_z / r^2)
//   paper_literal: A^{z,j} = C/r^3 (1 - 3 r_j r_z / r^2) for every j
enum class CouplingForm { standard, paper_literal };

std::string_view to_string(CouplingForm form);
// Accepts "standard", "paper_literal" and "paper".
CouplingForm parse_coupling_form(std::string_view text);

struct NuclearSpin {
  Vec3 position{};  // Angstrom, relative to the qubit
  Vec3 coupling{};  // (A^{z,x}, A^{z,y}, A^{z,z}) in MHz
  double polarization = 0.0;
};

struct EnvironmentModel {
  std::vector<NuclearSpin> nuclei;
  double b_z = 0.0;  // Tesla
  PhysicalConstants constants;
  CouplingForm coupling_form = CouplingForm::standard;

  int size() const noexcept { return static_cast<int>(nuclei.size()); }
  // 2^K.
  long bath_dim() const noexcept { return 1L << nuclei.size(); }
};

// Dipolar prefactor C such that |A| ~ C / r^3, in MHz * Angstrom^3.
double dipolar_prefactor(const PhysicalConstants& constants);

// Secular hyperfine coupling vector (MHz) of a 13C nucleus at `position`.
// Throws DomainError for a zero-length (or non-finite) position.
Vec3 compute_coupling(const Vec3& position, const PhysicalConstants& constants,
                      CouplingForm form = CouplingForm::standard);

// Diamond lattice sites in the closed shell r_min <= |r| <= r_max around a
// lattice site at the origin, in a fixed lexicographic order of their integer
// coordinates (units of a0/4).
std::vector<Vec3> diamond_shell_sites(double r_min, double r_max, double lattice_constant);

// Draws `count` distinct sites from the shell without replacement.
//
// The generator is std::mt19937_64 seeded with `seed`. Index draws use
// rejection sampling on the raw 64-bit output (no std::*_distribution, whose
// output is library dependent) inside a partial Fisher-Yates shuffle over the
// site list returned by diamond_shell_sites, so the placement is reproducible
// across standard libraries.
//
// Polarizations start at 0 and the field at 0 T.
EnvironmentModel generate_bath(std::uint64_t seed, int count, double r_min, double r_max,
                               const PhysicalConstants& constants = {},
                               CouplingForm form = CouplingForm::standard);

// Copy of env with every nucleus at polarization p. Throws DomainError for |p| > 1.
EnvironmentModel set_uniform_polarization(EnvironmentModel env, double p);

// Copy of env in field b_z (Tesla).
EnvironmentModel with_field(EnvironmentModel env, double b_z);

// Columns: index, x_A, y_A, z_A, Azx_MHz, Azy_MHz, Azz_MHz.
void write_environment_csv(std::ostream& out, const EnvironmentModel& env);

}  // namespace nvbath
