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

#include "sglab/sg_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sglab::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

// Inverse standard normal CDF: Acklam's rational approximation followed by
// one Halley step against erfc, accurate to a few ulp across (0, 1).
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  if (plan.stages.empty()) fail("plan must contain at least one stage");
  if (plan.n_particles < 1) fail("n_particles must be at least 1");
}

double analytic_probability(const Direction& prep_dir, Port prep_port,
                            const Direction& meas_dir, Port meas_port) {
  const double cosine = prep_dir.cartesian().dot(meas_dir.cartesian());
  const double p =
      0.5 * (1.0 + sign(prep_port) * sign(meas_port) * cosine);
  return std::clamp(p, 0.0, 1.0);
}

CountRecord simulate_chain(const ExperimentPlan& plan) {
  validate(plan);
  const std::size_t n_stages = plan.stages.size();

  // Per-stage constants: the projective test and the two collapse states.
  struct StageModel {
    Measurement test;
    PureState up;
    PureState down;
    Port selected;
  };
  std::vector<StageModel> models;
  models.reserve(n_stages);
  for (const SGStage& stage : plan.stages) {
    models.push_back(StageModel{measurement_from_direction(stage.direction),
                                state_from_direction(stage.direction,
                                                     Port::plus),
                                state_from_direction(stage.direction,
                                                     Port::minus),
                                stage.selected_port});
  }

  CountRecord record;
  record.n_source = plan.n_particles;
  record.per_stage_transmitted.assign(n_stages, 0);
  record.outcome_plus.assign(n_stages, 0);
  record.outcome_minus.assign(n_stages, 0);

  const PureState ket0(1.0, 0.0);
  const PureState ket1(0.0, 1.0);

  RandomStream rng(plan.seed);
  for (std::uint64_t particle = 0; particle < plan.n_particles; ++particle) {
    PureState state =
        plan.source ? *plan.source
                    : (rng.uniform01() < 0.5 ? ket0 : ket1);
    for (std::size_t i = 0; i < n_stages; ++i) {
      const StageModel& m = models[i];
      const double p_plus = born_probability(DensityMatrix::pure(state),
                                             m.test.plus_projector());
      const Port sampled =
          rng.uniform01() < p_plus ? Port::plus : Port::minus;
      if (sampled == Port::plus) {
        ++record.outcome_plus[i];
      } else {
        ++record.outcome_minus[i];
      }
      if (sampled == m.selected) ++record.per_stage_transmitted[i];
      if (i + 1 == n_stages) break;
      if (sampled != m.selected) break;  // blocked: the particle is lost
      state = sampled == Port::plus ? m.up : m.down;
    }
  }
  return record;
}

double normal_two_sided_z(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    fail("confidence must lie strictly inside (0, 1)");
  }
  return inverse_normal_cdf(0.5 * (1.0 + confidence));
}

EstimateWithCI estimate_probability(std::uint64_t successes,
                                    std::uint64_t trials, double confidence) {
  if (trials == 0) fail("trials must be at least 1");
  if (successes > trials) fail("successes cannot exceed trials");
  const double z = normal_two_sided_z(confidence);

  const double n = static_cast<double>(trials);
  const double p_hat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));

  EstimateWithCI e;
  e.p_hat = p_hat;
  e.ci_low = std::min(std::max(0.0, center - half), p_hat);
  e.ci_high = std::max(std::min(1.0, center + half), p_hat);
  e.n = trials;
  e.confidence = confidence;
  return e;
}

Direction rotated_direction(const Direction& prep_dir, double angle) {
  const double theta = prep_dir.theta();
  const double phi = prep_dir.phi();
  const Vec3 radial = prep_dir.cartesian();
  // unit tangent along increasing theta: the fixed perpendicular axis
  const Vec3 tangent{std::cos(theta) * std::cos(phi),
                     std::cos(theta) * std::sin(phi), -std::sin(theta)};
  const Vec3 v = std::cos(angle) * radial + std::sin(angle) * tangent;
  return Direction::from_cartesian(v);
}

std::vector<SweepPoint> sweep_angle(const Direction& prep_dir, Port prep_port,
                                    Port meas_port,
                                    const std::vector<double>& angles,
                                    std::uint64_t n_per_point,
                                    std::uint64_t seed) {
  if (angles.empty()) fail("sweep requires at least one angle");

  const PureState prepared = state_from_direction(prep_dir, prep_port);
  std::vector<SweepPoint> rows;
  rows.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double alpha = angles[i];
    ExperimentPlan plan;
    plan.stages = {SGStage{prep_dir, prep_port},
                   SGStage{rotated_direction(prep_dir, alpha), meas_port}};
    plan.n_particles = n_per_point;
    plan.seed = seed + i;  // one substream per angle
    plan.source = prepared;

    const CountRecord rec = simulate_chain(plan);
    const std::uint64_t successes =
        meas_port == Port::plus ? rec.final_plus() : rec.final_minus();

    SweepPoint pt;
    pt.angle = alpha;
    pt.analytic_p = std::clamp(
        0.5 * (1.0 + sign(prep_port) * sign(meas_port) * std::cos(alpha)),
        0.0, 1.0);
    pt.estimate = estimate_probability(successes, rec.final_arrivals());
    rows.push_back(pt);
  }
  return rows;
}

}  // namespace sglab::sim
