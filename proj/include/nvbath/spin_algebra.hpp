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

#include <iosfwd>

#include "nvbath/env_model.hpp"
#include "nvbath/operators.hpp"

namespace nvbath {

enum class Axis { x, y, z };

// Spin-1/2 operator on `site` of a `total_sites` chain, embedded with
// identities. Product z-basis, site 0 is the most significant Kronecker
// factor: basis index bit (K-1-k) is 1 when spin k points down.
HermitianOperator spin_operator(Axis axis, int site, int total_sites);

// H_E = sum_k 2 pi gamma_n B_z I^z_k, angular MHz (time in microseconds).
HermitianOperator build_bath_hamiltonian(const EnvironmentModel& env);

// V = sum_k sum_j 2 pi A^{z,j}_k I^j_k, angular MHz.
HermitianOperator build_coupling_operator(const EnvironmentModel& env);

// Product state of single-spin states diag((1 + p_k)/2, (1 - p_k)/2).
DensityMatrix initial_bath_state(const EnvironmentModel& env);

// Row-major dump, each cell written as a "re,im" pair with 17 significant digits.
void write_matrix_csv(std::ostream& out, const ComplexMatrix& m);

}  // namespace nvbath
