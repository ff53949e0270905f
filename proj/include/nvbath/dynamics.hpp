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

#include <numbers>
#include <string_view>

#include "nvbath/env_model.hpp"
#include "nvbath/numerics.hpp"
#include "nvbath/operators.hpp"

namespace nvbath {

// Which two NV levels form the qubit. The upper pointer state is always
// m = +1 (coupling +V); the lower one is m = 0 (no coupling) or m = -1 (-V).
struct QubitChoice {
  enum class Label { zero_one, minus_one_one };

  Label label = Label::zero_one;
  int sign_n = 0;   // coefficient of V in the lower-branch Hamiltonian
  int n_index = 0;  // m value of the lower pointer state

  static constexpr QubitChoice zero_one() { return {Label::zero_one, 0, 0}; }
  static constexpr QubitChoice minus_one_one() { return {Label::minus_one_one, -1, -1}; }

  friend constexpr bool operator==(const QubitChoice&, const QubitChoice&) = default;
};

// "01" or "-11".
std::string_view to_string(QubitChoice q);
QubitChoice parse_qubit(std::string_view text);

// Pointer-state branch: n (lower) or 1 (upper).
enum class Branch { n, one };

struct ConditionalPropagators {
  UnitaryOperator w_n;
  UnitaryOperator w_1;
  double t = 0.0;  // microseconds
};

// Qubit state a|n> + b|1>.
struct QubitAmplitudes {
  Complex a{1.0 / std::numbers::sqrt2, 0.0};
  Complex b{1.0 / std::numbers::sqrt2, 0.0};

  // Throws DomainError unless |a|^2 + |b|^2 = 1 within 1e-12.
  void validate() const;
};

// Qubit-bath density matrix in 2x2 block form, qubit as the outer factor.
struct JointState {
  DensityMatrix matrix;
  Index bath_dim = 0;

  ComplexMatrix block(Branch row, Branch col) const;
  // Tr over the qubit: |a|^2 R_nn + |b|^2 R_11.
  ComplexMatrix reduced_bath() const;
};

// Conditional evolution of the bath for one (environment, qubit) pair.
//
// H_E + sign_n V and H_E + V are diagonalized once at construction; each
// call to at() is then two O(d^3) products with no further decomposition.
// Immutable after construction, so at() may be called concurrently.
class ConditionalEvolution {
 public:
  ConditionalEvolution(const EnvironmentModel& env, QubitChoice qubit);

  ConditionalPropagators at(double t) const;

  QubitChoice qubit() const noexcept { return qubit_; }
  Index bath_dim() const noexcept { return spectrum_1_.dim(); }
  const EigenDecomposition& spectrum(Branch b) const {
    return b == Branch::n ? spectrum_n_ : spectrum_1_;
  }

 private:
  QubitChoice qubit_;
  EigenDecomposition spectrum_n_;
  EigenDecomposition spectrum_1_;
};

// w_n = exp(-i (H_E + sign_n V) t), w_1 = exp(-i (H_E + V) t). Throws
// DomainError for t < 0.
ConditionalPropagators conditional_propagators(const EnvironmentModel& env, QubitChoice qubit,
                                               double t);

// R_ij(t) = w_i R(0) w_j^dagger.
ComplexMatrix conditional_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                                Branch i, Branch j);

// R_ii(t); a valid state by construction.
DensityMatrix conditional_bath_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                                     Branch i);

JointState joint_state(const ConditionalPropagators& props, const DensityMatrix& r0,
                       const QubitAmplitudes& amps);

// Tr R_n1(t); the qubit off-diagonal element is a b^* times this value.
Complex coherence(const ConditionalPropagators& props, const DensityMatrix& r0);

}  // namespace nvbath
