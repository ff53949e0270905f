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

#include <complex>

#include <Eigen/Dense>

namespace nvbath {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

// Largest entry modulus, the norm used by every tolerance check here.
double max_abs(const ComplexMatrix& m);

// Tag selecting the non-validating constructors. Only for matrices that are
// valid by construction (unitary conjugation of a valid state, etc.).
struct TrustedTag {
  explicit TrustedTag() = default;
};
inline constexpr TrustedTag trusted{};

// Square complex matrix with ||M - M^dagger||_max < 1e-12.
class HermitianOperator {
 public:
  // Throws ContractViolation if m is not square, not finite or not Hermitian.
  explicit HermitianOperator(ComplexMatrix m);
  HermitianOperator(ComplexMatrix m, TrustedTag) : matrix_(std::move(m)) {}

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

// Hermitian, unit trace, spectrum bounded below by -1e-10.
class DensityMatrix : public HermitianOperator {
 public:
  // Full validation including an eigenvalue check.
  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(ComplexMatrix m, TrustedTag t) : HermitianOperator(std::move(m), t) {}
};

// ||U U^dagger - I||_max < 1e-10.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m);
  UnitaryOperator(ComplexMatrix m, TrustedTag) : matrix_(std::move(m)) {}

  static UnitaryOperator identity(Index dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }
  UnitaryOperator adjoint() const { return {matrix_.adjoint(), trusted}; }

 private:
  ComplexMatrix matrix_;
};

}  // namespace nvbath
