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

#include "nvbath/dynamics.hpp"
#include "nvbath/env_model.hpp"
#include "nvbath/operators.hpp"

namespace nvbath {

// Partially transposed eigenvalues with |lambda| below this count as zero.
inline constexpr double kNegativityThreshold = 1e-12;

// Derivative magnitudes below this (per microsecond) are treated as flat when
// comparing signs.
inline constexpr double kDerivativeThreshold = 1e-4;

struct MetricPoint {
  double t = 0.0;  // microseconds
  double negativity = 0.0;
  double one_minus_fidelity = 0.0;
  double coherence_mod = 0.0;
  double commutator_norm = 0.0;
};

struct MetricSeries {
  std::vector<MetricPoint> points;
  std::vector<double> d_negativity_dt;
  std::vector<double> d_one_minus_fidelity_dt;
};

// Absolute sum of the negative eigenvalues of the qubit-partial-transposed state.
double negativity(const JointState& sigma);

// Uhlmann fidelity [Tr sqrt(sqrt(A) B sqrt(A))]^2, evaluated literally with
// three PSD square roots. Values within 1e-9 outside [0, 1] are clamped;
// further out throws ContractViolation.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// True iff ||r_nn - r_11||_max < eps.
bool separability_check(const DensityMatrix& r_nn, const DensityMatrix& r_11, double eps);

// ||w_n w_1 - w_1 w_n||_max.
double commutator_witness(const ConditionalPropagators& props);

// n uniformly spaced times from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, int n);

// Evaluates every metric on `grid` (strictly increasing, uniform spacing,
// at least 3 points) and appends central-difference derivatives of N and
// 1 - F. Grid points are independent and may be spread over `threads`
// workers; the result is identical for any thread count.
MetricSeries metric_series(const EnvironmentModel& env, QubitChoice qubit,
                           const QubitAmplitudes& amps, std::span<const double> grid,
                           unsigned threads = 1);

struct SignAgreement {
  double fraction = 1.0;   // 1 when no point qualifies
  std::size_t compared = 0;
  std::size_t agreeing = 0;
};

// Fraction of grid points, among those where both |dN/dt| and |d(1-F)/dt|
// exceed `threshold`, at which the two derivatives share a sign.
SignAgreement derivative_sign_agreement(const MetricSeries& series,
                                        double threshold = kDerivativeThreshold);

// Empirical relation between N and 1 - F; no fixed constant is assumed.
struct ProportionalityFit {
  double slope = 0.0;       // least squares N ~ slope * (1 - F) through the origin
  double mean_ratio = 0.0;  // mean of N / (1 - F) where 1 - F > 1e-6
  std::size_t ratio_points = 0;
};

ProportionalityFit proportionality_fit(const MetricSeries& series);

}  // namespace nvbath
