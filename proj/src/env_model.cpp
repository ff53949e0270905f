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

#include "nvbath/env_model.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "format.hpp"
#include "nvbath/errors.hpp"

namespace nvbath {

void PhysicalConstants::validate() const {
  const auto check = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("constants.") + key, "must be strictly positive");
    }
  };
  check(delta_zfs, "delta_zfs");
  check(gamma_e, "gamma_e");
  check(gamma_n, "gamma_n");
  check(mu0_over_4pi, "mu0_over_4pi");
  check(lattice_constant, "lattice_constant");
}

std::string_view to_string(CouplingForm form) {
  return form == CouplingForm::standard ? "standard" : "paper_literal";
}

CouplingForm parse_coupling_form(std::string_view text) {
  if (text == "standard") return CouplingForm::standard;
  if (text == "paper_literal" || text == "paper") return CouplingForm::paper_literal;
  throw ConfigError("coupling_form", "expected 'standard' or 'paper', got '" +
                                         std::string(text) + "'");
}

double dipolar_prefactor(const PhysicalConstants& c) {
  // mu0/4pi * (h gamma_e)(h gamma_n) / r^3 is an energy; divide by h for a
  // frequency. Work in SI, then convert Hz -> MHz and m^3 -> Angstrom^3.
  const double gamma_e_hz = c.gamma_e * 1e9;
  const double gamma_n_hz = c.gamma_n * 1e6;
  const double hz_m3 = c.mu0_over_4pi * kPlanck * gamma_e_hz * gamma_n_hz;
  return hz_m3 * 1e30 / 1e6;
}

Vec3 compute_coupling(const Vec3& r, const PhysicalConstants& constants, CouplingForm form) {
  const double r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    throw DomainError("compute_coupling: position must be non-zero and finite");
  }
  const double rn = std::sqrt(r2);
  const double scale = dipolar_prefactor(constants) / (r2 * rn);
  Vec3 a{};
  for (int j = 0; j < 3; ++j) {
    const double isotropic = (form == CouplingForm::standard) ? (j == 2 ? 1.0 : 0.0) : 1.0;
    a[j] = scale * (isotropic - 3.0 * r[j] * r[2] / r2);
  }
  return a;
}

namespace {

// Diamond = FCC + basis {0, (1/4,1/4,1/4)}. In units of a0/4, FCC points are
// all-even vectors with component sum divisible by 4; the second basis atom
// shifts them by (1,1,1).
bool is_diamond_site(long x, long y, long z) {
  const auto mod4 = [](long v) { return ((v % 4) + 4) % 4; };
  const bool all_even = (x % 2 == 0) && (y % 2 == 0) && (z % 2 == 0);
  const bool all_odd = (x % 2 != 0) && (y % 2 != 0) && (z % 2 != 0);
  if (all_even) return mod4(x + y + z) == 0;
  if (all_odd) return mod4(x + y + z - 3) == 0;
  return false;
}

std::uint64_t bounded(std::mt19937_64& engine, std::uint64_t n) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % n);
  std::uint64_t x = engine();
  while (x >= limit) {
    x = engine();
  }
  return x % n;
}

}  // namespace

std::vector<Vec3> diamond_shell_sites(double r_min, double r_max, double lattice_constant) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw ConfigError("shell", "require 0 < r_min < r_max");
  }
  const double unit = lattice_constant / 4.0;
  const long reach = static_cast<long>(std::ceil(r_max / unit));
  std::vector<Vec3> sites;
  for (long x = -reach; x <= reach; ++x) {
    for (long y = -reach; y <= reach; ++y) {
      for (long z = -reach; z <= reach; ++z) {
        if (!is_diamond_site(x, y, z)) continue;
        const double r = unit * std::sqrt(static_cast<double>(x * x + y * y + z * z));
        if (r >= r_min && r <= r_max) {
          sites.push_back({unit * static_cast<double>(x), unit * static_cast<double>(y),
                           unit * static_cast<double>(z)});
        }
      }
    }
  }
  return sites;
}

EnvironmentModel generate_bath(std::uint64_t seed, int count, double r_min, double r_max,
                               const PhysicalConstants& constants, CouplingForm form) {
  constants.validate();
  if (count < 1) {
    throw ConfigError("nucleus_count", "must be at least 1");
  }
  std::vector<Vec3> sites = diamond_shell_sites(r_min, r_max, constants.lattice_constant);
  if (sites.size() < static_cast<std::size_t>(count)) {
    throw ConfigError("shell", "shell [" + detail::format_g(r_min, 6) + ", " +
                                   detail::format_g(r_max, 6) + "] Angstrom holds only " +
                                   std::to_string(sites.size()) + " lattice sites, " +
                                   std::to_string(count) + " requested");
  }

  if (count > kMaxNuclei) {
    throw ConfigError("nucleus_count",
                      "at most " + std::to_string(kMaxNuclei) + " nuclei are supported");
  }

  std::mt19937_64 engine(seed);
  const std::size_t n = sites.size();
  EnvironmentModel env;
  env.constants = constants;
  env.coupling_form = form;
  env.nuclei.reserve(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(engine, n - i));
    std::swap(sites[i], sites[j]);
    env.nuclei.push_back({sites[i], compute_coupling(sites[i], constants, form), 0.0});
  }
  return env;
}

EnvironmentModel set_uniform_polarization(EnvironmentModel env, double p) {
  if (!(std::abs(p) <= 1.0)) {
    throw DomainError("polarization " + detail::format_g(p, 6) + " is outside [-1, 1]");
  }
  for (auto& nucleus : env.nuclei) {
    nucleus.polarization = p;
  }
  return env;
}

EnvironmentModel with_field(EnvironmentModel env, double b_z) {
  if (!std::isfinite(b_z)) {
    throw DomainError("magnetic field must be finite");
  }
  env.b_z = b_z;
  return env;
}

void write_environment_csv(std::ostream& out, const EnvironmentModel& env) {
  out << "index,x_A,y_A,z_A,Azx_MHz,Azy_MHz,Azz_MHz\n";
  for (std::size_t k = 0; k < env.nuclei.size(); ++k) {
    const auto& n = env.nuclei[k];
    out << k;
    for (double v : n.position) out << ',' << detail::format_g(v, 17);
    for (double v : n.coupling) out << ',' << detail::format_g(v, 17);
    out << '\n';
  }
}

}  // namespace nvbath
