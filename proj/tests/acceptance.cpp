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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code is
// non-zero if any selected criterion fails.
//
//   acceptance            run all criteria
//   acceptance 3 7        run criteria 3 and 7 only

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "nvbath/dynamics.hpp"
#include "nvbath/entanglement_metrics.hpp"
#include "nvbath/env_model.hpp"
#include "nvbath/numerics.hpp"
#include "nvbath/scenario.hpp"
#include "nvbath/spin_algebra.hpp"

using namespace nvbath;

namespace {

constexpr int kNuclei = 5;
constexpr double kRMin = 2.5;
constexpr double kRMax = 8.0;
constexpr std::uint64_t kFirstSeed = 1;
constexpr std::uint64_t kLastSeed = 10;
const std::vector<QubitChoice> kQubits{QubitChoice::zero_one(), QubitChoice::minus_one_one()};
const std::vector<double> kFields{0.0, 0.2};
const std::vector<double> kPolarizations{0.1, 0.4, 0.7, 1.0};

const std::vector<double>& default_grid() {
  static const std::vector<double> grid = [] {
    const ScenarioConfig defaults;
    return uniform_grid(defaults.t_max, defaults.n_steps);
  }();
  return grid;
}

EnvironmentModel environment(std::uint64_t seed, double p, double b_z) {
  static std::map<std::uint64_t, EnvironmentModel> baths;
  auto it = baths.find(seed);
  if (it == baths.end()) it = baths.emplace(seed, generate_bath(seed, kNuclei, kRMin, kRMax)).first;
  return with_field(set_uniform_polarization(it->second, p), b_z);
}

const MetricSeries& series(std::uint64_t seed, QubitChoice q, double b_z, double p) {
  static std::map<std::tuple<std::uint64_t, int, double, double>, MetricSeries> cache;
  const auto key = std::make_tuple(seed, q.sign_n, b_z, p);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, metric_series(environment(seed, p, b_z), q, {}, default_grid())).first;
  }
  return it->second;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// ---------------------------------------------------------------------------

Outcome zero_polarization() {
  double max_n = 0.0, max_omf = 0.0, worst_min_coherence = 0.0;
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits)
      for (double b : kFields) {
        const MetricSeries& s = series(seed, q, b, 0.0);
        double min_coh = 1.0;
        for (const auto& pt : s.points) {
          max_n = std::max(max_n, pt.negativity);
          max_omf = std::max(max_omf, pt.one_minus_fidelity);
          min_coh = std::min(min_coh, pt.coherence_mod);
        }
        worst_min_coherence = std::max(worst_min_coherence, min_coh);
      }
  return {max_n < 1e-10 && max_omf < 1e-10 && worst_min_coherence < 0.999,
          "max N = " + fmt(max_n) + ", max 1-F = " + fmt(max_omf) +
              ", largest per-series min |W| = " + fmt(worst_min_coherence)};
}

Outcome initial_product_state() {
  double max_n = 0.0, max_omf = 0.0;
  std::size_t configs = 0;
  std::vector<double> ps = kPolarizations;
  ps.insert(ps.begin(), {0.0, -0.5});
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits)
      for (double b : kFields)
        for (double p : ps) {
          const EnvironmentModel env = environment(seed, p, b);
          const DensityMatrix r0 = initial_bath_state(env);
          const auto props = conditional_propagators(env, q, 0.0);
          max_n = std::max(max_n, negativity(joint_state(props, r0, {})));
          max_omf = std::max(max_omf, 1.0 - fidelity(conditional_bath_state(props, r0, Branch::n),
                                                     conditional_bath_state(props, r0, Branch::one)));
          ++configs;
        }
  return {max_n < 1e-12 && max_omf < 1e-12, std::to_string(configs) + " configurations, max N(0) = " +
                                                fmt(max_n) + ", max 1-F(0) = " + fmt(max_omf)};
}

Outcome schmidt_oracle() {
  double worst = 0.0;
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits)
      for (double b : kFields)
        for (const auto& pt : series(seed, q, b, 1.0).points) {
          worst = std::max(worst, std::abs(pt.negativity - 0.5 * std::sqrt(pt.one_minus_fidelity)));
        }
  return {worst < 1e-8, "max |N - sqrt(1-F)/2| = " + fmt(worst) + " over 40 series"};
}

Outcome kernel_contracts() {
  double unitarity = 0.0, trace = 0.0, min_eig = 0.0, spectrum = 0.0;
  const auto& grid = default_grid();
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits)
      for (double b : kFields)
        for (double p : {0.4, 1.0}) {
          const EnvironmentModel env = environment(seed, p, b);
          const DensityMatrix r0 = initial_bath_state(env);
          const RealVector r0_spectrum = eigvalsh(r0);
          const ConditionalEvolution evo(env, q);
          const ComplexMatrix id = ComplexMatrix::Identity(env.bath_dim(), env.bath_dim());
          for (std::size_t i = 0; i < grid.size(); i += 20) {
            const auto props = evo.at(grid[i]);
            for (const auto* w : {&props.w_n, &props.w_1}) {
              unitarity = std::max(unitarity, max_abs(w->matrix() * w->matrix().adjoint() - id));
            }
            const JointState sigma = joint_state(props, r0, {});
            trace = std::max(trace, std::abs(sigma.matrix.matrix().trace() - 1.0));
            min_eig = std::min(min_eig, eigvalsh(sigma.matrix).minCoeff());
            for (auto br : {Branch::n, Branch::one}) {
              const RealVector ev = eigvalsh(conditional_bath_state(props, r0, br));
              spectrum = std::max(spectrum, (ev - r0_spectrum).cwiseAbs().maxCoeff());
            }
          }
        }
  return {unitarity < 1e-10 && trace < 1e-10 && min_eig >= -1e-9 && spectrum < 1e-9,
          "max ||ww^+ - I|| = " + fmt(unitarity) + ", max |Tr sigma - 1| = " + fmt(trace) +
              ", min eig sigma = " + fmt(min_eig) + ", max spectrum drift = " + fmt(spectrum)};
}

Outcome zero_field_identities() {
  std::mt19937_64 rng(2024);
  const auto& grid = default_grid();
  std::uniform_int_distribution<std::size_t> pick(1, grid.size() - 1);
  double w0 = 0.0, wm = 0.0;
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed) {
    const EnvironmentModel env = environment(seed, 0.4, 0.0);
    const ConditionalEvolution zero_one(env, QubitChoice::zero_one());
    const ConditionalEvolution minus_one_one(env, QubitChoice::minus_one_one());
    const ComplexMatrix id = ComplexMatrix::Identity(env.bath_dim(), env.bath_dim());
    for (int k = 0; k < 20; ++k) {
      const double t = grid[pick(rng)];
      w0 = std::max(w0, max_abs(zero_one.at(t).w_n.matrix() - id));
      const auto p = minus_one_one.at(t);
      wm = std::max(wm, max_abs(p.w_n.matrix() - p.w_1.matrix().adjoint()));
    }
  }
  return {w0 < 1e-10 && wm < 1e-10,
          "max ||w_0 - I|| = " + fmt(w0) + ", max ||w_-1 - w_1^+|| = " + fmt(wm)};
}

Outcome commutator() {
  double at_zero = 0.0;
  double weakest_peak = std::numeric_limits<double>::infinity();
  const auto& grid = default_grid();
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits) {
      const ConditionalEvolution zero(environment(seed, 0.4, 0.0), q);
      const ConditionalEvolution field(environment(seed, 0.4, 0.2), q);
      double peak = 0.0;
      for (double t : grid) {
        at_zero = std::max(at_zero, commutator_witness(zero.at(t)));
        peak = std::max(peak, commutator_witness(field.at(t)));
      }
      weakest_peak = std::min(weakest_peak, peak);
    }
  return {at_zero < 1e-10 && weakest_peak > 1e-6,
          "max at B=0: " + fmt(at_zero) + ", smallest peak at B=0.2 T: " + fmt(weakest_peak)};
}

Outcome sign_agreement() {
  std::size_t total = 0, passing = 0;
  double worst = 1.0;
  std::string worst_label;
  for (auto seed = kFirstSeed; seed <= kLastSeed; ++seed)
    for (auto q : kQubits)
      for (double b : kFields)
        for (double p : kPolarizations) {
          const SignAgreement a = derivative_sign_agreement(series(seed, q, b, p));
          ++total;
          passing += a.fraction >= 0.95;
          if (a.fraction < worst) {
            worst = a.fraction;
            worst_label = "seed " + std::to_string(seed) + " qubit " + std::string(to_string(q)) +
                          " B=" + fmt(b) + " p=" + fmt(p);
          }
        }
  return {passing == total, std::to_string(passing) + "/" + std::to_string(total) +
                                " series reach 95%; worst " + fmt(worst) + " (" + worst_label + ")"};
}

// --- independent 4x4 evaluation for a single nucleus ------------------------

using LComplex = std::complex<long double>;
using M2 = std::array<std::array<LComplex, 2>, 2>;
using M4 = std::array<std::array<LComplex, 4>, 4>;

M2 mul(const M2& a, const M2& b) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

M2 dagger(const M2& a) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

// exp(-i t (h . sigma)) = cos(|h| t) - i sin(|h| t) (h . sigma) / |h|
M2 spin_rotation(long double hx, long double hy, long double hz, long double t) {
  const long double norm = std::sqrt(hx * hx + hy * hy + hz * hz);
  const LComplex i(0, 1);
  M2 u{};
  if (norm == 0) {
    u[0][0] = u[1][1] = 1;
    return u;
  }
  const long double c = std::cos(norm * t), s = std::sin(norm * t) / norm;
  u[0][0] = c - i * s * hz;
  u[1][1] = c + i * s * hz;
  u[0][1] = -i * s * LComplex(hx, -hy);
  u[1][0] = -i * s * LComplex(hx, hy);
  return u;
}

M4 mul(const M4& a, const M4& b) {
  M4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

long double trace(const M4& a) { return (a[0][0] + a[1][1] + a[2][2] + a[3][3]).real(); }

// Real roots of the depressed-free quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0
// (all roots assumed real), by Ferrari's method and Newton polishing.
std::array<long double, 4> quartic_roots(long double c3, long double c2, long double c1,
                                         long double c0) {
  const long double shift = c3 / 4;
  const long double p = c2 - 3 * c3 * c3 / 8;
  const long double q = c1 - c3 * c2 / 2 + c3 * c3 * c3 / 8;
  const long double r = c0 - c3 * c1 / 4 + c3 * c3 * c2 / 16 - 3 * c3 * c3 * c3 * c3 / 256;

  // Largest root of 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0, trigonometric form.
  const long double a2 = p, a1 = (p * p - 4 * r) / 4, a0 = -q * q / 8;
  const long double qq = (3 * a1 - a2 * a2) / 9;
  const long double rr = (9 * a2 * a1 - 27 * a0 - 2 * a2 * a2 * a2) / 54;
  long double m;
  if (qq < 0) {
    const long double theta = std::acos(std::clamp(rr / std::sqrt(-qq * qq * qq), -1.0L, 1.0L));
    m = 2 * std::sqrt(-qq) * std::cos(theta / 3) - a2 / 3;
  } else {
    m = std::cbrt(rr + std::sqrt(qq * qq * qq + rr * rr)) +
        std::cbrt(rr - std::sqrt(qq * qq * qq + rr * rr)) - a2 / 3;
  }

  std::array<long double, 4> y{};
  const auto solve = [](long double b, long double c, long double* out) {
    const long double disc = std::sqrt(std::max(0.0L, b * b - 4 * c));
    out[0] = (-b - disc) / 2;
    out[1] = (-b + disc) / 2;
  };
  if (m > 1e-30L) {
    const long double s = std::sqrt(2 * m);
    solve(-s, p / 2 + m + q / (2 * s), &y[0]);
    solve(s, p / 2 + m - q / (2 * s), &y[2]);
  } else {
    // Biquadratic: y^4 + p y^2 + r = 0.
    const long double disc = std::sqrt(std::max(0.0L, p * p - 4 * r));
    const long double z1 = std::max(0.0L, (-p + disc) / 2), z2 = std::max(0.0L, (-p - disc) / 2);
    y = {-std::sqrt(z1), std::sqrt(z1), -std::sqrt(z2), std::sqrt(z2)};
  }
  std::array<long double, 4> x{};
  for (int k = 0; k < 4; ++k) {
    long double v = y[k] - shift;
    for (int it = 0; it < 4; ++it) {
      const long double f = (((v + c3) * v + c2) * v + c1) * v + c0;
      const long double df = ((4 * v + 3 * c3) * v + 2 * c2) * v + c1;
      if (df == 0) break;
      v -= f / df;
    }
    x[k] = v;
  }
  return x;
}

struct BruteForce {
  double negativity;
  double fidelity;
};

BruteForce brute_force(const Vec3& a, double gamma_n, double b_z, double p, QubitChoice q,
                       std::complex<double> amp_a, std::complex<double> amp_b, double t) {
  const long double pi = std::numbers::pi_v<long double>;
  // H = pi gamma_n B sigma_z + s pi (A . sigma) in angular MHz.
  const auto branch = [&](int s) {
    return spin_rotation(s * pi * a[0], s * pi * a[1], pi * gamma_n * b_z + s * pi * a[2], t);
  };
  const M2 wn = branch(q.sign_n);
  const M2 w1 = branch(1);
  M2 r0{};
  r0[0][0] = (1 + static_cast<long double>(p)) / 2;
  r0[1][1] = (1 - static_cast<long double>(p)) / 2;

  const M2 rnn = mul(mul(wn, r0), dagger(wn));
  const M2 r11 = mul(mul(w1, r0), dagger(w1));
  const M2 rn1 = mul(mul(wn, r0), dagger(w1));
  const M2 r1n = dagger(rn1);

  const LComplex la(amp_a.real(), amp_a.imag()), lb(amp_b.real(), amp_b.imag());
  const long double aa = std::norm(la), bb = std::norm(lb);
  // Partially transposed state: off-diagonal blocks exchanged.
  M4 pt{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      pt[i][j] = aa * rnn[i][j];
      pt[i][j + 2] = std::conj(la) * lb * r1n[i][j];
      pt[i + 2][j] = la * std::conj(lb) * rn1[i][j];
      pt[i + 2][j + 2] = bb * r11[i][j];
    }
  const M4 pt2 = mul(pt, pt), pt3 = mul(pt2, pt), pt4 = mul(pt3, pt);
  const long double p1 = trace(pt), p2 = trace(pt2), p3 = trace(pt3), p4 = trace(pt4);
  const long double e1 = p1, e2 = (e1 * p1 - p2) / 2, e3 = (e2 * p1 - e1 * p2 + p3) / 3,
                    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4;
  long double neg = 0;
  for (long double root : quartic_roots(-e1, e2, -e3, e4)) {
    if (root < -1e-12L) neg -= root;
  }

  // 2x2 Uhlmann fidelity: Tr(rho sigma) + 2 sqrt(det rho det sigma).
  const auto det = [](const M2& m) { return (m[0][0] * m[1][1] - m[0][1] * m[1][0]).real(); };
  const long double overlap = mul(rnn, r11)[0][0].real() + mul(rnn, r11)[1][1].real();
  const long double f = overlap + 2 * std::sqrt(std::max(0.0L, det(rnn) * det(r11)));
  return {static_cast<double>(neg), static_cast<double>(f)};
}

Outcome brute_force_single_nucleus() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double dn = 0.0, df = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    // Random site in the default shell, random field, polarization, amplitudes, time.
    const double cos_theta = 2 * u(rng) - 1, phi = 2 * std::numbers::pi * u(rng);
    const double radius = kRMin + (kRMax - kRMin) * u(rng);
    const double sin_theta = std::sqrt(1 - cos_theta * cos_theta);
    const Vec3 pos{radius * sin_theta * std::cos(phi), radius * sin_theta * std::sin(phi),
                   radius * cos_theta};
    EnvironmentModel env;
    env.coupling_form = draw % 4 == 3 ? CouplingForm::paper_literal : CouplingForm::standard;
    env.nuclei.push_back({pos, compute_coupling(pos, env.constants, env.coupling_form),
                          2 * u(rng) - 1});
    env.b_z = 0.5 * u(rng);
    const QubitChoice q = draw % 2 == 0 ? QubitChoice::zero_one() : QubitChoice::minus_one_one();
    const double theta = 0.5 * std::numbers::pi * u(rng);
    const QubitAmplitudes amps{{std::cos(theta), 0.0},
                               std::polar(std::sin(theta), 2 * std::numbers::pi * u(rng))};
    const double t = 20.0 * u(rng);

    const DensityMatrix r0 = initial_bath_state(env);
    const auto props = conditional_propagators(env, q, t);
    const double n = negativity(joint_state(props, r0, amps));
    const double f = fidelity(conditional_bath_state(props, r0, Branch::n),
                              conditional_bath_state(props, r0, Branch::one));
    const BruteForce ref = brute_force(env.nuclei[0].coupling, env.constants.gamma_n, env.b_z,
                                       env.nuclei[0].polarization, q, amps.a, amps.b, t);
    dn = std::max(dn, std::abs(n - ref.negativity));
    df = std::max(df, std::abs(f - ref.fidelity));
  }
  return {dn < 1e-10 && df < 1e-10,
          "100 draws, max |dN| = " + fmt(dn) + ", max |dF| = " + fmt(df)};
}

Outcome entanglement_presence() {
  const auto dir = std::filesystem::temp_directory_path() / "nvbath_acceptance_preset";
  std::filesystem::remove_all(dir);
  paper_figures(dir, ScenarioConfig{}.seed);
  std::ifstream in(dir / "summary.json");
  const auto summary = nlohmann::json::parse(in);
  std::size_t count = 0, entangled = 0;
  double weakest = std::numeric_limits<double>::infinity();
  for (const auto& s : summary["series"]) {
    ++count;
    const double n = s["max_negativity"].get<double>();
    entangled += n > 1e-6;
    weakest = std::min(weakest, n);
  }
  return {count == 16 && entangled == 16, std::to_string(entangled) + "/" + std::to_string(count) +
                                              " preset series with max N > 1e-6; weakest " +
                                              fmt(weakest)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 zero-polarization separability", zero_polarization},
      {"AC2 initial product state", initial_product_state},
      {"AC3 pure-environment Schmidt oracle", schmidt_oracle},
      {"AC4 kernel contracts", kernel_contracts},
      {"AC5 zero-field propagator identities", zero_field_identities},
      {"AC6 commutator witness", commutator},
      {"AC7 derivative-sign agreement >= 95% per series", sign_agreement},
      {"AC8 single-nucleus brute-force equivalence", brute_force_single_nucleus},
      {"AC9 entanglement for polarized baths", entanglement_presence},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::printf("unknown criterion %d\n", id);
      return 2;
    }
    const auto& [name, run] = criteria[static_cast<std::size_t>(id - 1)];
    Outcome outcome{false, ""};
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
