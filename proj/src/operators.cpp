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

#include "nvbath/operators.hpp"

#include <Eigen/Eigenvalues>

#include "nvbath/errors.hpp"

namespace nvbath {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractViolation(std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw ContractViolation(std::string(what) + " has non-finite entries");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "Hermitian operator");
  const double asym = max_abs(matrix_ - matrix_.adjoint());
  if (asym >= kHermitianTolerance) {
    throw ContractViolation("operator is not Hermitian: ||M - M^dagger||_max = " +
                            std::to_string(asym));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : HermitianOperator(std::move(m)) {
  const Complex tr = matrix().trace();
  if (std::abs(tr - 1.0) >= kTraceTolerance) {
    throw ContractViolation("density matrix trace is " + std::to_string(tr.real()) +
                            ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix(), Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -kPsdTolerance) {
    throw ContractViolation("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : matrix_(std::move(m)) {
  require_square_finite(matrix_, "unitary operator");
  const Index d = matrix_.rows();
  const double dev = max_abs(matrix_ * matrix_.adjoint() - ComplexMatrix::Identity(d, d));
  if (dev >= kUnitaryTolerance) {
    throw ContractViolation("operator is not unitary: ||U U^dagger - I||_max = " +
                            std::to_string(dev));
  }
}

UnitaryOperator UnitaryOperator::identity(Index dim) {
  return {ComplexMatrix::Identity(dim, dim), trusted};
}

}  // namespace nvbath
