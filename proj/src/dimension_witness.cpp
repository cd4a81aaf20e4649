// Copyright 2026 The sg-lab Authors
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

#include "sglab/dimension_witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "sglab/sg_simulator.hpp"

namespace sglab::witness {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

double checked_probability(double p, const char* what) {
  if (!(p >= -kExactTol && p <= 1.0 + kExactTol)) {
    std::ostringstream msg;
    msg << what << " must be a probability, got " << p;
    fail(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

DensityMatrix prep_density(const Preparation& prep) {
  return density_from_direction(prep.direction, prep.port);
}

// Discrimination direction behind a pair test: the Helstrom projector of a
// qubit pair is itself a pure state, so its Bloch vector orients the magnet.
// Identical preparations have no discriminating test; any fixed direction
// yields the required zero difference, so fall back to e3.
Measurement pair_measurement(const DensityMatrix& hi,
                             const DensityMatrix& lo) {
  if (max_abs_diff(hi.matrix(), lo.matrix()) <= kExactTol) {
    return measurement_from_direction(Direction::e3());
  }
  return helstrom_measurement(hi, lo);
}

Direction measurement_direction(const Measurement& m) {
  return Direction::from_cartesian(
      bloch_vector(DensityMatrix(m.plus_projector())));
}

// Monte Carlo estimate of Pr(+1 | preparation, test) with exactly n trials:
// the prepared state feeds a two-stage chain whose first stage reproduces
// the preparation (transmitting everything) and whose final stage is the
// test magnet.
double sampled_plus_probability(const Preparation& prep,
                                const Direction& meas_dir, std::uint64_t n,
                                std::uint64_t seed) {
  sim::ExperimentPlan plan;
  plan.stages = {sim::SGStage{prep.direction, prep.port},
                 sim::SGStage{meas_dir, Port::plus}};
  plan.n_particles = n;
  plan.seed = seed;
  plan.source = state_from_direction(prep.direction, prep.port);
  const sim::CountRecord rec = sim::simulate_chain(plan);
  return static_cast<double>(rec.final_plus()) /
         static_cast<double>(rec.final_arrivals());
}

void check_preps(const std::vector<Preparation>& preps) {
  if (preps.size() < 2) fail("need at least two preparations");
}

}  // namespace

ProbabilityTable ProbabilityTable::u_scenario(
    std::vector<std::vector<double>> entries, double sum_tolerance) {
  const int n = static_cast<int>(entries.size());
  if (n < 2) fail("U scenario needs at least two preparations");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(entries[x].size()) != n) {
      std::ostringstream msg;
      msg << "U scenario row " << x + 1 << " must list " << n << " outcomes";
      fail(msg.str());
    }
    double sum = 0.0;
    for (double& p : entries[x]) {
      p = checked_probability(p, "table entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tolerance) {
      std::ostringstream msg;
      msg << "outcome distribution for preparation " << x + 1
          << " sums to " << sum;
      fail(msg.str());
    }
  }
  ProbabilityTable t;
  t.kind_ = WitnessKind::U;
  t.n_preps_ = n;
  t.u_entries_ = std::move(entries);
  return t;
}

ProbabilityTable ProbabilityTable::w_scenario(
    int n_preps, std::vector<std::vector<double>> plus,
    std::vector<std::vector<double>> minus, double sum_tolerance) {
  if (n_preps < 2) fail("W scenario needs at least two preparations");
  const int n_pairs = n_preps * (n_preps - 1) / 2;
  if (static_cast<int>(plus.size()) != n_preps ||
      static_cast<int>(minus.size()) != n_preps) {
    fail("W scenario needs one row per preparation");
  }
  for (int x = 0; x < n_preps; ++x) {
    if (static_cast<int>(plus[x].size()) != n_pairs ||
        static_cast<int>(minus[x].size()) != n_pairs) {
      std::ostringstream msg;
      msg << "preparation " << x + 1 << " must list all " << n_pairs
          << " pair measurements";
      fail(msg.str());
    }
    for (int k = 0; k < n_pairs; ++k) {
      plus[x][k] = checked_probability(plus[x][k], "table entry");
      minus[x][k] = checked_probability(minus[x][k], "table entry");
      const double sum = plus[x][k] + minus[x][k];
      if (std::abs(sum - 1.0) > sum_tolerance) {
        std::ostringstream msg;
        msg << "outcome distribution for preparation " << x + 1
            << ", measurement " << k + 1 << " sums to " << sum;
        fail(msg.str());
      }
    }
  }
  ProbabilityTable t;
  t.kind_ = WitnessKind::W;
  t.n_preps_ = n_preps;
  t.w_plus_ = std::move(plus);
  t.w_minus_ = std::move(minus);
  return t;
}

int ProbabilityTable::pair_index(int hi, int lo) {
  return (hi - 1) * (hi - 2) / 2 + (lo - 1);
}

double ProbabilityTable::u_prob(int prep, int outcome) const {
  return u_entries_.at(prep - 1).at(outcome - 1);
}

double ProbabilityTable::w_prob_plus(int prep, int hi, int lo) const {
  return w_plus_.at(prep - 1).at(pair_index(hi, lo));
}

double ProbabilityTable::w_prob_minus(int prep, int hi, int lo) const {
  return w_minus_.at(prep - 1).at(pair_index(hi, lo));
}

double u_witness(const ProbabilityTable& table) {
  if (table.kind() != WitnessKind::U) {
    fail("u_witness requires a U-scenario table");
  }
  double sum = 0.0;
  for (int x = 1; x <= table.n_preps(); ++x) sum += table.u_prob(x, x);
  return sum / table.n_preps();
}

double u_bound(int d, int n_preps) {
  if (d < 1 || n_preps < 1) fail("u_bound requires d >= 1 and N >= 1");
  return static_cast<double>(d) / n_preps;
}

double w_witness(const ProbabilityTable& table) {
  if (table.kind() != WitnessKind::W) {
    fail("w_witness requires a W-scenario table");
  }
  double sum = 0.0;
  for (int hi = 2; hi <= table.n_preps(); ++hi) {
    for (int lo = 1; lo < hi; ++lo) {
      const double diff =
          table.w_prob_plus(hi, hi, lo) - table.w_prob_plus(lo, hi, lo);
      sum += diff * diff;
    }
  }
  return sum;
}

double w_bound(int d, int n_preps) {
  if (d < 1 || n_preps < 2) fail("w_bound requires d >= 1 and N >= 2");
  const double n = n_preps;
  return 0.5 * n * n * (1.0 - 1.0 / std::min(d, n_preps));
}

double bound(WitnessKind kind, int d, int n_preps) {
  return kind == WitnessKind::U ? u_bound(d, n_preps) : w_bound(d, n_preps);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix2 delta = rho.matrix() - sigma.matrix();
  double lo = 0.0, hi = 0.0;
  delta.hermitian_eigenvalues(lo, hi);
  return std::max(0.0, hi) + std::max(0.0, lo);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double cross = (rho.matrix() * sigma.matrix()).trace().real();
  const double det_r = std::max(0.0, rho.matrix().det().real());
  const double det_s = std::max(0.0, sigma.matrix().det().real());
  const double f2 = cross + 2.0 * std::sqrt(det_r * det_s);
  return std::clamp(std::sqrt(std::max(0.0, f2)), 0.0, 1.0);
}

FuchsVanDeGraaf fuchs_van_de_graaf_check(const DensityMatrix& rho,
                                         const DensityMatrix& sigma) {
  const double d = trace_distance(rho, sigma);
  const double f = fidelity(rho, sigma);
  FuchsVanDeGraaf result;
  result.slack_low = f - (1.0 - d);
  result.slack_high = std::sqrt(std::max(0.0, 1.0 - d * d)) - f;
  result.holds = result.slack_low >= -1e-9 && result.slack_high >= -1e-9;
  return result;
}

Measurement helstrom_measurement(const DensityMatrix& rho,
                                 const DensityMatrix& sigma) {
  const Matrix2 delta = rho.matrix() - sigma.matrix();
  if (max_abs_diff(delta, Matrix2::zero()) <= kExactTol) {
    fail("states coincide; discrimination is undefined");
  }
  double lo = 0.0, hi = 0.0;
  delta.hermitian_eigenvalues(lo, hi);

  // eigenvector of the top eigenvalue; the better-conditioned of the two
  // algebraic candidates
  const Complex v1a = delta.e01, v1b = hi - delta.e00;
  const Complex v2a = hi - delta.e11, v2b = delta.e10;
  const double n1 = std::norm(v1a) + std::norm(v1b);
  const double n2 = std::norm(v2a) + std::norm(v2b);
  Complex va = v1a, vb = v1b;
  double nn = n1;
  if (n2 > n1) {
    va = v2a;
    vb = v2b;
    nn = n2;
  }
  const Matrix2 plus{va * std::conj(va) / nn, va * std::conj(vb) / nn,
                     vb * std::conj(va) / nn, vb * std::conj(vb) / nn};
  return Measurement(plus, Matrix2::identity() - plus);
}

AverageState average_state_purity(const std::vector<PureState>& states) {
  if (states.empty()) fail("average over an empty preparation list");
  Matrix2 sum = Matrix2::zero();
  for (const PureState& psi : states) sum += outer(psi);
  const Matrix2 omega = (1.0 / static_cast<double>(states.size())) * sum;
  const double purity = (omega * omega).trace().real();
  return AverageState{DensityMatrix(omega), purity};
}

std::optional<int> solve_dimension_tight(int n_preps) {
  if (n_preps < 2) fail("tightness equation requires N >= 2");
  // d/N = (N^2/2)(1 - 1/d) for integer 1 <= d <= N, cleared of denominators:
  // 2 d^2 = N^3 (d - 1)
  const std::int64_t n3 = static_cast<std::int64_t>(n_preps) * n_preps *
                          n_preps;
  for (int d = 1; d <= n_preps; ++d) {
    if (2 * static_cast<std::int64_t>(d) * d == n3 * (d - 1)) return d;
  }
  return std::nullopt;
}

double w_from_angles(const std::vector<double>& thetas) {
  if (thetas.size() < 2) fail("need at least two preparation angles");
  double sum = 0.0;
  for (std::size_t x = 1; x < thetas.size(); ++x) {
    for (std::size_t xp = 0; xp < x; ++xp) {
      const double diff = std::cos(thetas[x]) - std::cos(thetas[xp]);
      sum += diff * diff;
    }
  }
  return 0.25 * sum;
}

std::optional<int> infer_min_dimension(double witness_value, WitnessKind kind,
                                       int n_preps, double tolerance) {
  if (witness_value < 0.0) fail("witness value must be non-negative");
  if (n_preps < 2) fail("inference requires N >= 2");
  for (int d = 1; d <= n_preps; ++d) {
    if (witness_value <= bound(kind, d, n_preps) + tolerance) return d;
  }
  return std::nullopt;
}

WitnessReport analyze(const ProbabilityTable& table, double tolerance) {
  WitnessReport report;
  report.kind = table.kind();
  report.n_preps = table.n_preps();
  report.witness_value = table.kind() == WitnessKind::U ? u_witness(table)
                                                        : w_witness(table);
  for (int d = 1; d <= table.n_preps(); ++d) {
    report.bound_per_d.push_back(bound(table.kind(), d, table.n_preps()));
  }
  report.inferred_min_d = infer_min_dimension(report.witness_value,
                                              table.kind(), table.n_preps(),
                                              tolerance);
  report.tolerance = tolerance;
  return report;
}

ProbabilityTable analytic_u_table(const std::vector<Preparation>& preps) {
  check_preps(preps);
  const int n = static_cast<int>(preps.size());
  const Measurement readout = measurement_from_direction(preps[0].direction);
  const Matrix2& first = readout.projector(preps[0].port);
  const Matrix2& second = readout.projector(opposite(preps[0].port));

  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int x = 0; x < n; ++x) {
    const DensityMatrix rho = prep_density(preps[x]);
    rows[x][0] = born_probability(rho, first);
    rows[x][1] = born_probability(rho, second);
  }
  return ProbabilityTable::u_scenario(std::move(rows));
}

ProbabilityTable analytic_w_table(const std::vector<Preparation>& preps) {
  check_preps(preps);
  const int n = static_cast<int>(preps.size());
  const int n_pairs = n * (n - 1) / 2;
  std::vector<std::vector<double>> plus(n, std::vector<double>(n_pairs, 0.0));
  std::vector<std::vector<double>> minus(n, std::vector<double>(n_pairs, 0.0));

  for (int hi = 2; hi <= n; ++hi) {
    for (int lo = 1; lo < hi; ++lo) {
      const Measurement test =
          pair_measurement(prep_density(preps[hi - 1]),
                           prep_density(preps[lo - 1]));
      const int k = ProbabilityTable::pair_index(hi, lo);
      for (int x = 0; x < n; ++x) {
        const DensityMatrix rho = prep_density(preps[x]);
        plus[x][k] = born_probability(rho, test.plus_projector());
        minus[x][k] = born_probability(rho, test.minus_projector());
      }
    }
  }
  return ProbabilityTable::w_scenario(n, std::move(plus), std::move(minus));
}

ProbabilityTable sampled_u_table(const std::vector<Preparation>& preps,
                                 std::uint64_t n_per_cell,
                                 std::uint64_t seed) {
  check_preps(preps);
  const int n = static_cast<int>(preps.size());
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int x = 0; x < n; ++x) {
    const double p_plus =
        sampled_plus_probability(preps[x], preps[0].direction, n_per_cell,
                                 seed + static_cast<std::uint64_t>(x));
    const double p_first =
        preps[0].port == Port::plus ? p_plus : 1.0 - p_plus;
    rows[x][0] = p_first;
    rows[x][1] = 1.0 - p_first;
  }
  return ProbabilityTable::u_scenario(std::move(rows));
}

ProbabilityTable sampled_w_table(const std::vector<Preparation>& preps,
                                 std::uint64_t n_per_cell,
                                 std::uint64_t seed) {
  check_preps(preps);
  const int n = static_cast<int>(preps.size());
  const int n_pairs = n * (n - 1) / 2;
  std::vector<std::vector<double>> plus(n, std::vector<double>(n_pairs, 0.0));
  std::vector<std::vector<double>> minus(n, std::vector<double>(n_pairs, 0.0));

  std::uint64_t cell = 0;
  for (int hi = 2; hi <= n; ++hi) {
    for (int lo = 1; lo < hi; ++lo) {
      const Direction meas_dir = measurement_direction(
          pair_measurement(prep_density(preps[hi - 1]),
                           prep_density(preps[lo - 1])));
      const int k = ProbabilityTable::pair_index(hi, lo);
      for (int x = 0; x < n; ++x) {
        const double p =
            sampled_plus_probability(preps[x], meas_dir, n_per_cell,
                                     seed + cell);
        plus[x][k] = p;
        minus[x][k] = 1.0 - p;
        ++cell;
      }
    }
  }
  return ProbabilityTable::w_scenario(n, std::move(plus), std::move(minus));
}

}  // namespace sglab::witness
