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

#ifndef SGLAB_SG_SIMULATOR_HPP_
#define SGLAB_SG_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sglab/qubit_algebra.hpp"

namespace sglab::sim {

/// One magnet in the chain: an orientation plus the transmitted port.
/// For the final stage the port tells which detector counts as "transmitted"
/// in the record; both outcomes are tallied there regardless.
struct SGStage {
  Direction direction;
  Port selected_port = Port::plus;
};

/// Full description of a run.  Deterministic contract: identical plans
/// (stages, particle count, seed, source) produce bit-identical records.
/// `source` empty means an unpolarized furnace, modeled as a classical
/// half/half mixture of |0> and |1>, statistically identical to the
/// maximally mixed state for every projective chain downstream.
struct ExperimentPlan {
  std::vector<SGStage> stages;  // length >= 1
  std::uint64_t n_particles = 0;  // >= 1
  std::uint64_t seed = 0;
  std::optional<PureState> source;  // nullopt = unpolarized
};

/// Validates the structural plan invariants; throws std::invalid_argument.
void validate(const ExperimentPlan& plan);

/// Tallies of one run.  For stage i, outcome_plus[i] + outcome_minus[i] is
/// the number of particles that reached stage i, and per_stage_transmitted[i]
/// is the count whose sampled port matched the stage's selected port (the
/// beam allowed through; at the final stage, the selected detector's count).
struct CountRecord {
  std::vector<std::uint64_t> per_stage_transmitted;
  std::vector<std::uint64_t> outcome_plus;
  std::vector<std::uint64_t> outcome_minus;
  std::uint64_t n_source = 0;

  std::uint64_t final_plus() const { return outcome_plus.back(); }
  std::uint64_t final_minus() const { return outcome_minus.back(); }
  /// Particles that reached the last stage.
  std::uint64_t final_arrivals() const { return final_plus() + final_minus(); }
};

/// Reproducible uniform variates on [0,1).
///
/// The generator is std::mt19937_64 (the standard-specified Mersenne Twister,
/// identical output on every conforming implementation), mapped to doubles by
/// taking the top 53 bits: (x >> 11) * 2^-53.  No std::*_distribution is
/// used anywhere on the simulation path, so streams are portable.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Exact two-device statistics: Pr(outcome | preparation, measurement)
///   = (1 + s_prep * s_meas * (r_prep . r_meas)) / 2.
/// Coincides with the Born rule of the corresponding state and projector.
double analytic_probability(const Direction& prep_dir, Port prep_port,
                            const Direction& meas_dir, Port meas_port);

/// Runs every particle through the chain sequentially.  Per particle: draw
/// the source state (one uniform when unpolarized), then at each stage sample
/// a port with the Born probability of the current state, collapse onto the
/// sampled port's state, and drop the particle when a non-final stage blocks
/// it.  The final stage records whichever port was sampled.
CountRecord simulate_chain(const ExperimentPlan& plan);

/// Binomial point estimate with a Wilson score interval.
struct EstimateWithCI {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n = 0;
  double confidence = 0.95;
};

/// Wilson score interval (well behaved at p_hat in {0,1}).  trials >= 1 and
/// successes <= trials required; confidence strictly inside (0,1).
EstimateWithCI estimate_probability(std::uint64_t successes,
                                    std::uint64_t trials,
                                    double confidence = 0.95);

/// Two-sided normal quantile helper used by the Wilson interval:
/// returns z with P(|N(0,1)| <= z) = confidence.
double normal_two_sided_z(double confidence);

/// One row of an angle sweep.
struct SweepPoint {
  double angle = 0.0;
  double analytic_p = 0.0;
  EstimateWithCI estimate;
};

/// Measurement direction used by sweeps: the preparation direction rotated
/// by `angle` in the plane it spans with its spherical theta-tangent
/// (a fixed perpendicular axis, e1-aligned when the preparation is e3).
Direction rotated_direction(const Direction& prep_dir, double angle);

/// For each angle, runs the two-stage plan [preparation, rotated measurement]
/// with the prepared state itself as source, so the preparation stage
/// transmits every particle and the final stage sees exactly `n_per_point`
/// trials.  The analytic column is (1 + s*b*cos(angle))/2.
std::vector<SweepPoint> sweep_angle(const Direction& prep_dir, Port prep_port,
                                    Port meas_port,
                                    const std::vector<double>& angles,
                                    std::uint64_t n_per_point,
                                    std::uint64_t seed);

}  // namespace sglab::sim

#endif  // SGLAB_SG_SIMULATOR_HPP_
