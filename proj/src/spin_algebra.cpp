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

#include "nvbath/spin_algebra.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "format.hpp"
#include "nvbath/errors.hpp"

namespace nvbath {

namespace {

Eigen::Matrix2cd single_spin(Axis axis) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd s;
  switch (axis) {
    case Axis::x:
      s << 0.0, 0.5, 0.5, 0.0;
      break;
    case Axis::y:
      s << 0.0, -0.5i, 0.5i, 0.0;
      break;
    case Axis::z:
      s << 0.5, 0.0, 0.0, -0.5;
      break;
  }
  return s;
}

void require_bath_size(int k) {
  if (k < 1 || k > kMaxNuclei) {
    throw ConfigError("nucleus_count", "bath must hold between 1 and " +
                                           std::to_string(kMaxNuclei) + " nuclei, got " +
                                           std::to_string(k));
  }
}

// I (x) ... (x) factor (x) ... (x) I with `factor` in slot `site`.
ComplexMatrix embed(const Eigen::Matrix2cd& factor, int site, int total_sites) {
  const Index left = Index{1} << site;
  const Index right = Index{1} << (total_sites - site - 1);
  const ComplexMatrix inner = Eigen::kroneckerProduct(factor, ComplexMatrix::Identity(right, right));
  return Eigen::kroneckerProduct(ComplexMatrix::Identity(left, left), inner);
}

}  // namespace

HermitianOperator spin_operator(Axis axis, int site, int total_sites) {
  require_bath_size(total_sites);
  if (site < 0 || site >= total_sites) {
    throw IndexError("spin_operator: site " + std::to_string(site) + " out of range [0, " +
                     std::to_string(total_sites) + ")");
  }
  return {embed(single_spin(axis), site, total_sites), trusted};
}

HermitianOperator build_bath_hamiltonian(const EnvironmentModel& env) {
  require_bath_size(env.size());
  const Index d = env.bath_dim();
  const double omega = 2.0 * std::numbers::pi * env.constants.gamma_n * env.b_z;
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < env.size(); ++k) {
    h += omega * spin_operator(Axis::z, k, env.size()).matrix();
  }
  return {std::move(h), trusted};
}

HermitianOperator build_coupling_operator(const EnvironmentModel& env) {
  require_bath_size(env.size());
  const Index d = env.bath_dim();
  ComplexMatrix v = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < env.size(); ++k) {
    const Vec3& a = env.nuclei[static_cast<std::size_t>(k)].coupling;
    Eigen::Matrix2cd local = Eigen::Matrix2cd::Zero();
    local += a[0] * single_spin(Axis::x);
    local += a[1] * single_spin(Axis::y);
    local += a[2] * single_spin(Axis::z);
    v += 2.0 * std::numbers::pi * embed(local, k, env.size());
  }
  return {std::move(v), trusted};
}

DensityMatrix initial_bath_state(const EnvironmentModel& env) {
  require_bath_size(env.size());
  ComplexMatrix r = ComplexMatrix::Ones(1, 1);
  for (const auto& nucleus : env.nuclei) {
    const double p = nucleus.polarization;
    if (!(std::abs(p) <= 1.0)) {
      throw DomainError("polarization " + detail::format_g(p, 6) + " is outside [-1, 1]");
    }
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(0, 0) = 0.5 * (1.0 + p);
    rho(1, 1) = 0.5 * (1.0 - p);
    r = Eigen::kroneckerProduct(r, rho).eval();
  }
  return {std::move(r), trusted};
}

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << detail::format_g(m(i, j).real(), 17) << ',' << detail::format_g(m(i, j).imag(), 17);
    }
    out << '\n';
  }
}

}  // namespace nvbath
