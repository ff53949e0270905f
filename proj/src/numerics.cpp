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

#include "nvbath/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "nvbath/errors.hpp"

namespace nvbath {

ComplexMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition eigh(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenDecomposition eigh(const ComplexMatrix& m) { return eigh(HermitianOperator(m)); }

RealVector eigvalsh(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigendecomposition did not converge");
  }
  return solver.eigenvalues();
}

UnitaryOperator expm_unitary(const EigenDecomposition& h, double t) {
  if (t == 0.0) {
    return UnitaryOperator::identity(h.dim());
  }
  Eigen::VectorXcd phases(h.dim());
  for (Index i = 0; i < h.dim(); ++i) {
    phases(i) = std::polar(1.0, -h.eigenvalues(i) * t);
  }
  ComplexMatrix u = h.eigenvectors * phases.asDiagonal() * h.eigenvectors.adjoint();
  return {std::move(u), trusted};
}

UnitaryOperator expm_unitary(const HermitianOperator& h, double t) {
  if (t == 0.0) {
    return UnitaryOperator::identity(h.dim());
  }
  return expm_unitary(eigh(h), t);
}

HermitianOperator sqrtm_psd(const HermitianOperator& m) {
  const EigenDecomposition eig = eigh(m);
  const Index d = eig.dim();
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double floor = static_cast<double>(d) * std::numeric_limits<double>::epsilon() * scale;

  RealVector roots(d);
  for (Index i = 0; i < d; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -kNegativeHardLimit) {
      throw ContractViolation("sqrtm_psd: eigenvalue " + std::to_string(lambda) +
                              " is below -1e-8; input is not positive semidefinite");
    }
    roots(i) = lambda <= floor ? 0.0 : std::sqrt(lambda);
  }
  ComplexMatrix root = eig.eigenvectors * roots.cast<Complex>().asDiagonal() *
                       eig.eigenvectors.adjoint();
  // Restore exact Hermiticity lost to roundoff in the triple product.
  root = 0.5 * (root + root.adjoint()).eval();
  return {std::move(root), trusted};
}

HermitianOperator partial_transpose_qubit(const HermitianOperator& sigma, Index bath_dim) {
  if (bath_dim <= 0 || sigma.dim() != 2 * bath_dim) {
    throw ShapeError("partial_transpose_qubit: dimension " + std::to_string(sigma.dim()) +
                     " is not 2 x " + std::to_string(bath_dim));
  }
  const Index d = bath_dim;
  ComplexMatrix out = sigma.matrix();
  out.topRightCorner(d, d) = sigma.matrix().bottomLeftCorner(d, d);
  out.bottomLeftCorner(d, d) = sigma.matrix().topRightCorner(d, d);
  return {std::move(out), trusted};
}

std::vector<double> central_difference(std::span<const double> series, double dt) {
  if (series.size() < 3) {
    throw ShapeError("central_difference needs at least 3 samples, got " +
                     std::to_string(series.size()));
  }
  if (!(dt > 0.0)) {
    throw DomainError("central_difference: dt must be positive");
  }
  const std::size_t n = series.size();
  std::vector<double> out(n);
  out.front() = (series[1] - series[0]) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (series[i + 1] - series[i - 1]) / (2.0 * dt);
  }
  out.back() = (series[n - 1] - series[n - 2]) / dt;
  return out;
}

}  // namespace nvbath
