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

#include <span>
#include <vector>

#include "nvbath/operators.hpp"

namespace nvbath {

// Spectral decomposition M = V diag(lambda) V^dagger, eigenvalues ascending,
// eigenvectors stored as the columns of a unitary matrix.
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

// Eigenvalues in [-kClampTolerance, 0) are roundoff; below -kNegativeHardLimit
// the input is not positive semidefinite.
inline constexpr double kClampTolerance = 1e-10;
inline constexpr double kNegativeHardLimit = 1e-8;

EigenDecomposition eigh(const HermitianOperator& m);
// Validates Hermiticity first; throws ContractViolation otherwise.
EigenDecomposition eigh(const ComplexMatrix& m);

// Ascending eigenvalues only; cheaper when no eigenvectors are needed.
RealVector eigvalsh(const HermitianOperator& m);

// exp(-i h t) through the spectral decomposition of h. t == 0 yields the
// identity exactly.
UnitaryOperator expm_unitary(const HermitianOperator& h, double t);
UnitaryOperator expm_unitary(const EigenDecomposition& h, double t);

// Principal square root of a positive semidefinite operator.
//
// Negative eigenvalues down to -1e-8 are treated as roundoff and set to zero;
// anything lower throws ContractViolation. Positive eigenvalues below the
// eigensolver noise floor (dim * machine epsilon * largest |eigenvalue|) are
// also set to zero: their square roots would otherwise inject O(sqrt(eps))
// errors into traces of the root.
HermitianOperator sqrtm_psd(const HermitianOperator& m);

// Partial transpose over the qubit factor of a (2 x bath_dim)-dimensional
// operator: the two off-diagonal bath_dim x bath_dim blocks are exchanged.
HermitianOperator partial_transpose_qubit(const HermitianOperator& sigma, Index bath_dim);

// First derivative on a uniform grid: central differences inside, one-sided
// first-order differences at both ends.
std::vector<double> central_difference(std::span<const double> series, double dt);

}  // namespace nvbath
