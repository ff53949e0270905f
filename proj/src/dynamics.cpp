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

#include "nvbath/dynamics.hpp"

#include <cmath>
#include <string>

#include "nvbath/errors.hpp"
#include "nvbath/spin_algebra.hpp"

namespace nvbath {

std::string_view to_string(QubitChoice q) {
  return q.label == QubitChoice::Label::zero_one ? "01" : "-11";
}

QubitChoice parse_qubit(std::string_view text) {
  if (text == "01" || text == "zero_one") return QubitChoice::zero_one();
  if (text == "-11" || text == "minus_one_one") return QubitChoice::minus_one_one();
  throw ConfigError("qubit", "expected '01' or '-11', got '" + std::string(text) + "'");
}

void QubitAmplitudes::validate() const {
  const double norm = std::norm(a) + std::norm(b);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) >= 1e-12) {
    throw DomainError("qubit amplitudes must satisfy |a|^2 + |b|^2 = 1, got " +
                      std::to_string(norm));
  }
}

ComplexMatrix JointState::block(Branch row, Branch col) const {
  const Index r = row == Branch::n ? 0 : bath_dim;
  const Index c = col == Branch::n ? 0 : bath_dim;
  return matrix.matrix().block(r, c, bath_dim, bath_dim);
}

ComplexMatrix JointState::reduced_bath() const {
  return block(Branch::n, Branch::n) + block(Branch::one, Branch::one);
}

ConditionalEvolution::ConditionalEvolution(const EnvironmentModel& env, QubitChoice qubit)
    : qubit_(qubit) {
  const HermitianOperator h_e = build_bath_hamiltonian(env);
  const HermitianOperator v = build_coupling_operator(env);
  spectrum_n_ = eigh(HermitianOperator(h_e.matrix() + double(qubit.sign_n) * v.matrix(), trusted));
  spectrum_1_ = eigh(HermitianOperator(h_e.matrix() + v.matrix(), trusted));
}

ConditionalPropagators ConditionalEvolution::at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("evolution time must be finite and non-negative");
  }
  return {expm_unitary(spectrum_n_, t), expm_unitary(spectrum_1_, t), t};
}

ConditionalPropagators conditional_propagators(const EnvironmentModel& env, QubitChoice qubit,
                                               double t) {
  return ConditionalEvolution(env, qubit).at(t);
}

namespace {

const UnitaryOperator& pick(const ConditionalPropagators& props, Branch b) {
  return b == Branch::n ? props.w_n : props.w_1;
}

}  // namespace

ComplexMatrix conditional_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                                Branch i, Branch j) {
  const Index d = r0.dim();
  if (props.w_n.dim() != d || props.w_1.dim() != d) {
    throw ShapeError("conditional_state: propagators are " + std::to_string(props.w_n.dim()) +
                     "-dimensional, bath state is " + std::to_string(d) + "-dimensional");
  }
  return pick(props, i).matrix() * r0.matrix() * pick(props, j).matrix().adjoint();
}

DensityMatrix conditional_bath_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                                     Branch i) {
  ComplexMatrix r = conditional_state(props, r0, i, i);
  r = 0.5 * (r + r.adjoint()).eval();
  return {std::move(r), trusted};
}

JointState joint_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                       const QubitAmplitudes& amps) {
  amps.validate();
  const Index d = r0.dim();
  const ComplexMatrix r_nn = conditional_bath_state(props, r0, Branch::n).matrix();
  const ComplexMatrix r_11 = conditional_bath_state(props, r0, Branch::one).matrix();
  const ComplexMatrix r_n1 = conditional_state(props, r0, Branch::n, Branch::one);

  ComplexMatrix sigma(2 * d, 2 * d);
  sigma.topLeftCorner(d, d) = std::norm(amps.a) * r_nn;
  sigma.bottomRightCorner(d, d) = std::norm(amps.b) * r_11;
  sigma.topRightCorner(d, d) = amps.a * std::conj(amps.b) * r_n1;
  sigma.bottomLeftCorner(d, d) = sigma.topRightCorner(d, d).adjoint();
  return {DensityMatrix(std::move(sigma), trusted), d};
}

Complex coherence(const ConditionalPropagators& props, const DensityMatrix& r0) {
  return conditional_state(props, r0, Branch::n, Branch::one).trace();
}

}  // namespace nvbath
