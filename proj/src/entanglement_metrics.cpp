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

#include "nvbath/entanglement_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "nvbath/errors.hpp"
#include "nvbath/numerics.hpp"
#include "nvbath/spin_algebra.hpp"

namespace nvbath {

double negativity(const JointState& sigma) {
  const RealVector lambda = eigvalsh(partial_transpose_qubit(sigma.matrix, sigma.bath_dim));
  double sum = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -kNegativityThreshold) {
      sum -= lambda(i);
    }
  }
  return sum;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ShapeError("fidelity: dimensions " + std::to_string(a.dim()) + " and " +
                     std::to_string(b.dim()) + " differ");
  }
  const ComplexMatrix root_a = sqrtm_psd(a).matrix();
  ComplexMatrix inner = root_a * b.matrix() * root_a;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const double root_trace = sqrtm_psd(HermitianOperator(std::move(inner), trusted)).matrix().trace().real();
  const double f = root_trace * root_trace;
  constexpr double kAllowance = 1e-9;
  if (f < -kAllowance || f > 1.0 + kAllowance || !std::isfinite(f)) {
    throw ContractViolation("fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

bool separability_check(const DensityMatrix& r_nn, const DensityMatrix& r_11, double eps) {
  if (r_nn.dim() != r_11.dim()) {
    return false;
  }
  return max_abs(r_nn.matrix() - r_11.matrix()) < eps;
}

double commutator_witness(const ConditionalPropagators& props) {
  const ComplexMatrix& wn = props.w_n.matrix();
  const ComplexMatrix& w1 = props.w_1.matrix();
  return max_abs(wn * w1 - w1 * wn);
}

std::vector<double> uniform_grid(double t_max, int n) {
  if (n < 3) {
    throw ConfigError("n_steps", "need at least 3 grid points for central differences");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ConfigError("t_max", "must be positive");
  }
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double dt = t_max / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = dt * static_cast<double>(i);
  }
  grid.back() = t_max;
  return grid;
}

namespace {

double grid_spacing(std::span<const double> grid) {
  if (grid.size() < 3) {
    throw ConfigError("n_steps", "need at least 3 grid points for central differences");
  }
  const double dt = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  if (!(dt > 0.0) || grid.front() < 0.0) {
    throw ConfigError("grid", "times must be non-negative and strictly increasing");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = grid[i] - grid[i - 1];
    if (!(step > 0.0) || std::abs(step - dt) > 1e-9 * dt) {
      throw ConfigError("grid", "time grid must be uniformly spaced");
    }
  }
  return dt;
}

MetricPoint evaluate_point(const ConditionalEvolution& evolution, const DensityMatrix& r0,
                           const QubitAmplitudes& amps, double t) {
  const ConditionalPropagators props = evolution.at(t);
  const DensityMatrix r_nn = conditional_bath_state(props, r0, Branch::n);
  const DensityMatrix r_11 = conditional_bath_state(props, r0, Branch::one);
  MetricPoint p;
  p.t = t;
  p.negativity = negativity(joint_state(props, r0, amps));
  p.one_minus_fidelity = 1.0 - fidelity(r_nn, r_11);
  p.coherence_mod = std::abs(coherence(props, r0));
  p.commutator_norm = commutator_witness(props);
  return p;
}

}  // namespace

MetricSeries metric_series(const EnvironmentModel& env, QubitChoice qubit,
                           const QubitAmplitudes& amps, std::span<const double> grid,
                           unsigned threads) {
  const double dt = grid_spacing(grid);
  amps.validate();
  const ConditionalEvolution evolution(env, qubit);
  const DensityMatrix r0 = initial_bath_state(env);

  MetricSeries series;
  series.points.resize(grid.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      series.points[i] = evaluate_point(evolution, r0, amps, grid[i]);
    }
  } else {
    // Strided partition; every slot is written by exactly one worker.
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < grid.size(); i += workers) {
            series.points[i] = evaluate_point(evolution, r0, amps, grid[i]);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  std::vector<double> n(grid.size());
  std::vector<double> omf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    n[i] = series.points[i].negativity;
    omf[i] = series.points[i].one_minus_fidelity;
  }
  series.d_negativity_dt = central_difference(n, dt);
  series.d_one_minus_fidelity_dt = central_difference(omf, dt);
  return series;
}

SignAgreement derivative_sign_agreement(const MetricSeries& series, double threshold) {
  SignAgreement result;
  const std::size_t n = std::min(series.d_negativity_dt.size(),
                                 series.d_one_minus_fidelity_dt.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double dn = series.d_negativity_dt[i];
    const double df = series.d_one_minus_fidelity_dt[i];
    if (std::abs(dn) > threshold && std::abs(df) > threshold) {
      ++result.compared;
      if ((dn > 0.0) == (df > 0.0)) {
        ++result.agreeing;
      }
    }
  }
  if (result.compared > 0) {
    result.fraction = static_cast<double>(result.agreeing) / static_cast<double>(result.compared);
  }
  return result;
}

ProportionalityFit proportionality_fit(const MetricSeries& series) {
  ProportionalityFit fit;
  double sxy = 0.0;
  double sxx = 0.0;
  double ratio_sum = 0.0;
  for (const auto& p : series.points) {
    sxy += p.negativity * p.one_minus_fidelity;
    sxx += p.one_minus_fidelity * p.one_minus_fidelity;
    if (p.one_minus_fidelity > 1e-6) {
      ratio_sum += p.negativity / p.one_minus_fidelity;
      ++fit.ratio_points;
    }
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.mean_ratio = fit.ratio_points > 0 ? ratio_sum / static_cast<double>(fit.ratio_points) : 0.0;
  return fit;
}

}  // namespace nvbath
