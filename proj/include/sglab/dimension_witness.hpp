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

#ifndef SGLAB_DIMENSION_WITNESS_HPP_
#define SGLAB_DIMENSION_WITNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sglab/qubit_algebra.hpp"

namespace sglab::witness {

// Black-box dimension witnessing: everything here consumes only conditional
// probabilities Pr(a|x,y) or closed-form bounds, never the states themselves
// (except for the explicit table builders at the bottom, which play the role
// of the hidden third party that wired up the boxes).

enum class WitnessKind { U, W };

/// Conditional-probability table for one of the two scenarios.
///
/// U scenario: one measurement with N outcomes; u_entries[x][b] = Pr(b+1|x+1).
/// W scenario: the N(N-1)/2 dichotomic pair measurements y = (hi, lo) with
/// hi > lo, ordered lexicographically by (hi, lo); w_plus[x][y] = Pr(+1|x,y)
/// and w_minus[x][y] = Pr(-1|x,y).
class ProbabilityTable {
 public:
  static ProbabilityTable u_scenario(std::vector<std::vector<double>> entries,
                                     double sum_tolerance = 1e-9);
  static ProbabilityTable w_scenario(int n_preps,
                                     std::vector<std::vector<double>> plus,
                                     std::vector<std::vector<double>> minus,
                                     double sum_tolerance = 1e-9);

  WitnessKind kind() const { return kind_; }
  int n_preps() const { return n_preps_; }
  int n_pairs() const { return n_preps_ * (n_preps_ - 1) / 2; }

  /// U scenario: Pr(outcome | prep), both 1-based.
  double u_prob(int prep, int outcome) const;
  /// W scenario: Pr(+1 | prep, (hi, lo)), prep/hi/lo 1-based, hi > lo.
  double w_prob_plus(int prep, int hi, int lo) const;
  double w_prob_minus(int prep, int hi, int lo) const;

  /// Index of pair (hi, lo) in the lexicographic (hi, lo) order, hi > lo.
  static int pair_index(int hi, int lo);

 private:
  ProbabilityTable() = default;

  WitnessKind kind_ = WitnessKind::U;
  int n_preps_ = 0;
  std::vector<std::vector<double>> u_entries_;
  std::vector<std::vector<double>> w_plus_;
  std::vector<std::vector<double>> w_minus_;
};

/// U_N = (1/N) sum_x Pr(b=x|x).  Requires a U-scenario table.
double u_witness(const ProbabilityTable& table);

/// Dimension bound for U_N: d/N.
double u_bound(int d, int n_preps);

/// W_N = sum_{x>x'} |Pr(x,(x,x')) - Pr(x',(x,x'))|^2.  W-scenario table.
double w_witness(const ProbabilityTable& table);

/// Dimension bound for W_N: (N^2/2) (1 - 1/min{d, N}).
double w_bound(int d, int n_preps);

double bound(WitnessKind kind, int d, int n_preps);

/// Sum of the positive eigenvalues of rho - sigma; the best achievable
/// outcome-probability gap over all measurements.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Qubit closed form sqrt(Tr(rho sigma) + 2 sqrt(det rho det sigma)),
/// exact for 2x2; |<psi|psi'>| on pure pairs.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct FuchsVanDeGraaf {
  bool holds = false;
  double slack_low = 0.0;   // F - (1 - D)
  double slack_high = 0.0;  // sqrt(1 - D^2) - F
};

/// Checks 1 - D <= F <= sqrt(1 - D^2) with tolerance 1e-9.
FuchsVanDeGraaf fuchs_van_de_graaf_check(const DensityMatrix& rho,
                                         const DensityMatrix& sigma);

/// The optimal discrimination test: M+ projects onto the non-negative
/// eigenspace of rho - sigma, so Tr[(rho - sigma) M+] equals the trace
/// distance.  Throws when rho = sigma within kExactTol.
Measurement helstrom_measurement(const DensityMatrix& rho,
                                 const DensityMatrix& sigma);

/// Uniform average of pure-state projectors and its purity.
struct AverageState {
  DensityMatrix omega;
  double purity;
};

AverageState average_state_purity(const std::vector<PureState>& states);

/// Integer d in [1, N] with d/N = (N^2/2)(1 - 1/min{d,N}), if any.
/// For N = 2 the equation reduces to (d - 2)^2 = 0 with the unique root 2;
/// nullopt means no tight dimension exists for this N.
std::optional<int> solve_dimension_tight(int n_preps);

/// W_N for devices opened up: preparations along polar angles theta_x, every
/// pair measurement reading along the common polar axis, give
///   (1/4) sum_{x>x'} (cos theta_x - cos theta_{x'})^2.
/// The sum runs over unordered pairs (x > x'), which keeps the value within
/// w_bound(2, N) for every angle list.
double w_from_angles(const std::vector<double>& thetas);

/// Smallest d >= 1 with value <= bound(d, N) + tolerance; nullopt when even
/// d = N cannot explain the value ("unbounded": data inconsistent with any
/// d <= N).  Pass a statistical tolerance for sampled tables.
std::optional<int> infer_min_dimension(double witness_value, WitnessKind kind,
                                       int n_preps, double tolerance);

struct WitnessReport {
  double witness_value = 0.0;
  WitnessKind kind = WitnessKind::U;
  int n_preps = 0;
  std::vector<double> bound_per_d;  // bounds for d = 1..N
  std::optional<int> inferred_min_d;
  double tolerance = 0.0;
};

WitnessReport analyze(const ProbabilityTable& table, double tolerance);

// --- Table builders (the third party's side of the black box) ---

/// One preparation button: a direction plus the transmitted port.
struct Preparation {
  Direction direction;
  Port port = Port::plus;
};

/// Exact Born-rule U table.  The single readout is the projective test along
/// the first preparation's direction; outcome 1 is its port, outcome 2 the
/// opposite port, outcomes 3..N never fire.
ProbabilityTable analytic_u_table(const std::vector<Preparation>& preps);

/// Exact Born-rule W table with the per-pair optimal (Helstrom) tests.
ProbabilityTable analytic_w_table(const std::vector<Preparation>& preps);

/// Monte Carlo versions of the above: each cell is estimated by running the
/// two-stage chain [preparation, measurement] with the prepared state as
/// source (so every cell sees exactly n_per_cell trials).  Deterministic in
/// (preps, n_per_cell, seed).
ProbabilityTable sampled_u_table(const std::vector<Preparation>& preps,
                                 std::uint64_t n_per_cell, std::uint64_t seed);
ProbabilityTable sampled_w_table(const std::vector<Preparation>& preps,
                                 std::uint64_t n_per_cell, std::uint64_t seed);

}  // namespace sglab::witness

#endif  // SGLAB_DIMENSION_WITNESS_HPP_
