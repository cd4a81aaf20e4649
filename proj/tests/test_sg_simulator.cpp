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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "sglab/sg_simulator.hpp"
#include "test_util.hpp"

using namespace sglab;
using namespace sglab::sim;
using testutil::kPi;

namespace {

// Independent Wilson oracle: the closed form, spelled out with the frozen
// normal quantile for 95% confidence.
struct WilsonOracle {
  double lo, hi;
};

WilsonOracle wilson_95(std::uint64_t s, std::uint64_t n) {
  const double z = 1.959963984540054;  // two-sided 95% normal quantile
  const double ph = static_cast<double>(s) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double denom = 1.0 + z * z / nn;
  const double center = (ph + z * z / (2.0 * nn)) / denom;
  const double half =
      (z / denom) * std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn));
  return {center - half, center + half};
}

ExperimentPlan two_stage(const Direction& a, Port pa, const Direction& b,
                         Port pb, std::uint64_t n, std::uint64_t seed) {
  return ExperimentPlan{{SGStage{a, pa}, SGStage{b, pb}}, n, seed, {}};
}

}  // namespace

TEST_CASE("analytic_probability") {
  const Direction e3 = Direction::e3();
  const Direction e1 = Direction::e1();

  CHECK(analytic_probability(e3, Port::plus, e3, Port::plus) == 1.0);
  CHECK(analytic_probability(e3, Port::minus, e3, Port::minus) == 1.0);
  CHECK(analytic_probability(e3, Port::plus, e3, Port::minus) == 0.0);
  CHECK(analytic_probability(e3, Port::plus, e1, Port::plus) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(analytic_probability(e3, Port::plus, e1, Port::minus) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // 30-degree separation, both plus ports (the classic two-device setup)
  const double expected = 0.9330127018922194;  // (1+cos(pi/6))/2
  CHECK(std::abs(analytic_probability(e3, Port::plus, Direction(kPi / 6, 0.0),
                                      Port::plus) -
                 expected) <= 1e-15);

  SUBCASE("agrees with the Born rule") {
    RandomStream rng(101);
    for (int i = 0; i < 200; ++i) {
      const Direction prep = testutil::random_direction(rng);
      const Direction meas = testutil::random_direction(rng);
      const Port sp = rng.uniform01() < 0.5 ? Port::plus : Port::minus;
      const Port sm = rng.uniform01() < 0.5 ? Port::plus : Port::minus;
      const double analytic = analytic_probability(prep, sp, meas, sm);
      const double born = born_probability(
          density_from_direction(prep, sp),
          measurement_from_direction(meas).projector(sm));
      CHECK(std::abs(analytic - born) <= kExactTol);
      CHECK(analytic >= 0.0);
      CHECK(analytic <= 1.0);
    }
  }
}

TEST_CASE("simulate_chain reproducibility: same test twice answers yes") {
  const ExperimentPlan plan =
      two_stage(Direction::e3(), Port::plus, Direction::e3(), Port::plus,
                10000, 42);
  const CountRecord rec = simulate_chain(plan);
  CHECK(rec.n_source == 10000);
  // stage-1 survivors all reach the final stage and all fire "+", exactly
  CHECK(rec.final_arrivals() == rec.per_stage_transmitted[0]);
  CHECK(rec.final_minus() == 0);
  CHECK(rec.final_plus() == rec.final_arrivals());

  SUBCASE("holds for an arbitrary repeated direction, several repetitions") {
    RandomStream rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const Direction d = testutil::random_direction(rng);
      const Port p = rng.uniform01() < 0.5 ? Port::plus : Port::minus;
      ExperimentPlan plan_k{std::vector<SGStage>(4, SGStage{d, p}), 2000,
                            static_cast<std::uint64_t>(trial), {}};
      const CountRecord r = simulate_chain(plan_k);
      // zero losses after stage 1
      for (std::size_t i = 1; i < r.per_stage_transmitted.size(); ++i) {
        CHECK(r.per_stage_transmitted[i] == r.per_stage_transmitted[0]);
        CHECK(r.outcome_plus[i] + r.outcome_minus[i] ==
              r.per_stage_transmitted[0]);
      }
    }
  }
}

TEST_CASE("simulate_chain incompatibility: interposed orthogonal test") {
  ExperimentPlan plan{{SGStage{Direction::e3(), Port::plus},
                       SGStage{Direction::e1(), Port::plus},
                       SGStage{Direction::e3(), Port::plus}},
                      100000,
                      2024,
                      {}};
  const CountRecord rec = simulate_chain(plan);
  const double p_hat = static_cast<double>(rec.final_plus()) /
                       static_cast<double>(rec.final_arrivals());
  CHECK(std::abs(p_hat - 0.5) < 0.01);
  // the analytic value is exactly one half
  CHECK(analytic_probability(Direction::e1(), Port::plus, Direction::e3(),
                             Port::plus) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("simulate_chain blocked port never fires") {
  ExperimentPlan plan{{SGStage{Direction::e3(), Port::plus},
                       SGStage{Direction::e3(), Port::minus}},
                      5000,
                      1,
                      PureState(1.0, 0.0)};
  const CountRecord rec = simulate_chain(plan);
  CHECK(rec.per_stage_transmitted[0] == 5000);  // source is the + state
  CHECK(rec.final_minus() == 0);
  CHECK(rec.per_stage_transmitted[1] == 0);  // selected detector is "-"
}

TEST_CASE("simulate_chain determinism and count structure") {
  RandomStream rng(55);
  std::vector<SGStage> stages;
  for (int i = 0; i < 4; ++i) {
    stages.push_back(SGStage{testutil::random_direction(rng),
                             rng.uniform01() < 0.5 ? Port::plus : Port::minus});
  }
  const ExperimentPlan plan{stages, 20000, 77, {}};
  const CountRecord a = simulate_chain(plan);
  const CountRecord b = simulate_chain(plan);

  CHECK(a.per_stage_transmitted == b.per_stage_transmitted);
  CHECK(a.outcome_plus == b.outcome_plus);
  CHECK(a.outcome_minus == b.outcome_minus);
  CHECK(a.n_source == b.n_source);

  // monotone transmitted counts; arrivals bookkeeping consistent
  std::uint64_t prev = a.n_source;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    CHECK(a.outcome_plus[i] + a.outcome_minus[i] == prev);
    CHECK(a.per_stage_transmitted[i] <= prev);
    prev = a.per_stage_transmitted[i];
  }

  ExperimentPlan other = plan;
  other.seed = 78;
  CHECK(simulate_chain(other).per_stage_transmitted !=
        a.per_stage_transmitted);
}

TEST_CASE("empirical frequencies track the analytic law") {
  RandomStream rng(321);
  for (int trial = 0; trial < 5; ++trial) {
    const Direction prep = testutil::random_direction(rng);
    const Direction meas = testutil::random_direction(rng);
    const ExperimentPlan plan =
        two_stage(prep, Port::plus, meas, Port::plus, 100000,
                  1000 + static_cast<std::uint64_t>(trial));
    const CountRecord rec = simulate_chain(plan);
    const double p_hat = static_cast<double>(rec.final_plus()) /
                         static_cast<double>(rec.final_arrivals());
    const double p =
        analytic_probability(prep, Port::plus, meas, Port::plus);
    // unpolarized source: about n/2 particles reach the final stage
    CHECK(std::abs(p_hat - p) < 0.0075);
  }
}

TEST_CASE("simulate_chain validation") {
  CHECK_THROWS_AS(simulate_chain(ExperimentPlan{{}, 10, 0, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      simulate_chain(
          ExperimentPlan{{SGStage{Direction::e3(), Port::plus}}, 0, 0, {}}),
      std::invalid_argument);
}

TEST_CASE("estimate_probability (Wilson score)") {
  SUBCASE("boundary behaviour") {
    const EstimateWithCI zero = estimate_probability(0, 50);
    CHECK(zero.p_hat == 0.0);
    CHECK(zero.ci_low == 0.0);
    CHECK(zero.ci_high > 0.0);

    const EstimateWithCI one = estimate_probability(50, 50);
    CHECK(one.p_hat == 1.0);
    CHECK(one.ci_high == 1.0);
    CHECK(one.ci_low < 1.0);
  }

  SUBCASE("frozen midpoint case 50/100 at 95%") {
    const EstimateWithCI e = estimate_probability(50, 100, 0.95);
    CHECK(e.p_hat == 0.5);
    CHECK(std::abs(e.ci_low - 0.4038315303659956) <= 1e-12);
    CHECK(std::abs(e.ci_high - 0.5961684696340044) <= 1e-12);
    CHECK(std::abs((e.ci_low + e.ci_high) / 2.0 - 0.5) <= 1e-12);
  }

  SUBCASE("normal quantiles") {
    CHECK(std::abs(normal_two_sided_z(0.95) - 1.959963984540054) <= 1e-9);
    CHECK(std::abs(normal_two_sided_z(0.99) - 2.5758293035489004) <= 1e-9);
    CHECK(std::abs(normal_two_sided_z(0.68) - 0.994457883209753) <= 1e-9);
  }

  SUBCASE("matches the closed-form oracle on a grid") {
    for (std::uint64_t n : {1ull, 7ull, 100ull, 99999ull}) {
      for (std::uint64_t s : {std::uint64_t(0), n / 3, n / 2, n}) {
        const EstimateWithCI e = estimate_probability(s, n, 0.95);
        const WilsonOracle w = wilson_95(s, n);
        CHECK(std::abs(e.ci_low - std::max(0.0, w.lo)) <= 1e-12);
        CHECK(std::abs(e.ci_high - std::min(1.0, w.hi)) <= 1e-12);
        CHECK(e.ci_low >= 0.0);
        CHECK(e.ci_low <= e.p_hat);
        CHECK(e.p_hat <= e.ci_high);
        CHECK(e.ci_high <= 1.0);
      }
    }
  }

  SUBCASE("rejects impossible inputs") {
    CHECK_THROWS_AS(estimate_probability(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_probability(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(estimate_probability(1, 2, 1.0), std::invalid_argument);
  }
}

TEST_CASE("rotated_direction spans the expected plane") {
  const Direction r0 = rotated_direction(Direction::e3(), kPi / 2);
  const Vec3 v0 = r0.cartesian();
  CHECK(std::abs(v0.r1 - 1.0) <= kExactTol);
  CHECK(std::abs(v0.r3) <= kExactTol);

  RandomStream rng(19);
  for (int i = 0; i < 100; ++i) {
    const Direction prep = testutil::random_direction(rng);
    const double alpha = kPi * rng.uniform01();
    const Direction rot = rotated_direction(prep, alpha);
    CHECK(std::abs(prep.cartesian().dot(rot.cartesian()) - std::cos(alpha)) <=
          1e-9);
  }
}

TEST_CASE("sweep_angle") {
  const std::vector<double> angles{0.0, kPi / 2, kPi};
  const auto rows = sweep_angle(Direction::e3(), Port::plus, Port::plus,
                                angles, 2000, 99);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].analytic_p == 1.0);
  CHECK(rows[1].analytic_p == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(rows[2].analytic_p) <= 1e-12);

  // angle zero is the reproducibility case: the estimate is exactly 1
  CHECK(rows[0].estimate.p_hat == 1.0);
  CHECK(rows[0].estimate.n == 2000);

  SUBCASE("minus detector sees the complementary law") {
    const auto minus_rows = sweep_angle(Direction::e3(), Port::plus,
                                        Port::minus, angles, 2000, 99);
    REQUIRE(minus_rows.size() == 3);
    CHECK(std::abs(minus_rows[0].analytic_p) <= 1e-12);
    CHECK(minus_rows[1].analytic_p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(minus_rows[2].analytic_p == 1.0);
    CHECK(minus_rows[0].estimate.p_hat == 0.0);  // blocked exactly
  }

  SUBCASE("thirteen-angle grid tracks the cosine law") {
    std::vector<double> grid;
    for (int i = 0; i < 13; ++i) grid.push_back(kPi * i / 12.0);
    const auto pts =
        sweep_angle(Direction::e3(), Port::plus, Port::plus, grid, 20000, 4);
    double worst = 0.0;
    for (const auto& pt : pts) {
      worst = std::max(worst, std::abs(pt.estimate.p_hat - pt.analytic_p));
      CHECK(pt.estimate.ci_low <= pt.estimate.p_hat);
      CHECK(pt.estimate.p_hat <= pt.estimate.ci_high);
    }
    CHECK(worst < 0.015);  // 3 sigma at n = 2e4 is ~0.0106
  }
}
