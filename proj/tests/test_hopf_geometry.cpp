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
#include <complex>

#include "sglab/hopf_geometry.hpp"
#include "test_util.hpp"

using namespace sglab;
using namespace sglab::hopf;
using testutil::kPi;

namespace {

SpinorPair random_spinor(sim::RandomStream& rng) {
  return SpinorPair(testutil::random_pure_state(rng));
}

double sphere_dist(const SpherePoint& a, const SpherePoint& b) {
  const Vec3 d = a.vec() - b.vec();
  return d.norm();
}

}  // namespace

TEST_CASE("h_map") {
  CHECK(h_map(SpinorPair(1.0, 0.0)) == Complex(0.0, 0.0));
  const double isq2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h_map(SpinorPair(isq2, isq2)) - Complex(1.0, 0.0)) <=
        kExactTol);
  CHECK_THROWS_AS(h_map(SpinorPair(0.0, 1.0)), std::domain_error);

  SUBCASE("well defined on phase classes") {
    sim::RandomStream rng(211);
    for (int i = 0; i < 200; ++i) {
      const SpinorPair p = random_spinor(rng);
      if (std::abs(p.a()) < 1e-6) continue;
      const SpinorPair q = p.with_phase(2.0 * kPi * rng.uniform01());
      CHECK(std::abs(h_map(p) - h_map(q)) <=
            kValidityTol * (1.0 + std::abs(h_map(p))));
    }
  }
}

TEST_CASE("stereographic projection") {
  CHECK(stereographic(SpherePoint(0.0, 0.0, -1.0)) == Complex(0.0, 0.0));
  CHECK(std::abs(stereographic(SpherePoint(1.0, 0.0, 0.0)) -
                 Complex(1.0, 0.0)) <= kExactTol);
  CHECK_THROWS_AS(stereographic(SpherePoint(0.0, 0.0, 1.0)),
                  std::domain_error);

  SUBCASE("inverse formula lands on the sphere") {
    CHECK(sphere_dist(stereographic_inverse(Complex(0.0, 0.0)),
                      SpherePoint(0.0, 0.0, -1.0)) <= kExactTol);
    CHECK(sphere_dist(stereographic_inverse(Complex(1.0, 0.0)),
                      SpherePoint(1.0, 0.0, 0.0)) <= kExactTol);

    sim::RandomStream rng(223);
    for (int i = 0; i < 200; ++i) {
      const Complex z(20.0 * (rng.uniform01() - 0.5),
                      20.0 * (rng.uniform01() - 0.5));
      const SpherePoint p = stereographic_inverse(z);
      const Vec3 v = p.vec();
      CHECK(std::abs(v.dot(v) - 1.0) <= kExactTol);
    }
  }

  SUBCASE("round trips both ways") {
    sim::RandomStream rng(227);
    for (int i = 0; i < 500; ++i) {
      // plane -> sphere -> plane
      const Complex z(10.0 * (rng.uniform01() - 0.5),
                      10.0 * (rng.uniform01() - 0.5));
      CHECK(std::abs(stereographic(stereographic_inverse(z)) - z) <= 1e-9);

      // sphere -> plane -> sphere (north pole excluded)
      const Direction d = testutil::random_direction(rng);
      if (d.theta() < 1e-3) continue;
      const SpherePoint p(d.cartesian());
      CHECK(sphere_dist(stereographic_inverse(stereographic(p)), p) <= 1e-9);
    }
  }
}

TEST_CASE("hopf_projection") {
  CHECK(sphere_dist(hopf_projection(SpinorPair(1.0, 0.0)),
                    SpherePoint(0.0, 0.0, -1.0)) <= kExactTol);
  CHECK(sphere_dist(hopf_projection(SpinorPair(0.0, 1.0)),
                    SpherePoint(0.0, 0.0, 1.0)) <= kExactTol);
  const double isq2 = 1.0 / std::sqrt(2.0);
  CHECK(sphere_dist(hopf_projection(SpinorPair(isq2, isq2)),
                    SpherePoint(1.0, 0.0, 0.0)) <= kExactTol);

  SUBCASE("output is exactly unit and phase invariant") {
    sim::RandomStream rng(229);
    for (int i = 0; i < 100; ++i) {
      const SpinorPair p = random_spinor(rng);
      const SpherePoint s = hopf_projection(p);
      const Vec3 v = s.vec();
      CHECK(std::abs(v.dot(v) - 1.0) <= kExactTol);

      const SpinorPair q = p.with_phase(2.0 * kPi * rng.uniform01());
      CHECK(sphere_dist(hopf_projection(q), s) <= kExactTol);
    }
  }

  SUBCASE("agrees with the stereographic chart composition") {
    sim::RandomStream rng(233);
    int tested = 0;
    while (tested < 1000) {
      const SpinorPair p = random_spinor(rng);
      if (std::abs(p.a()) <= 1e-6) continue;
      ++tested;
      const SpherePoint via_chart = stereographic_inverse(h_map(p));
      CHECK(sphere_dist(via_chart, hopf_projection(p)) <= 1e-9);
    }
  }

  SUBCASE("equals the Bloch vector with the third coordinate flipped") {
    sim::RandomStream rng(239);
    for (int i = 0; i < 500; ++i) {
      const Direction d = testutil::random_direction(rng);
      const PureState psi = state_from_direction(d, Port::plus);
      const SpherePoint s = hopf_projection(SpinorPair(psi));
      const Vec3 r = bloch_vector(DensityMatrix::pure(psi));
      CHECK(std::abs(s.x1() - r.r1) <= kValidityTol);
      CHECK(std::abs(s.x2() - r.r2) <= kValidityTol);
      CHECK(std::abs(s.x3() + r.r3) <= kValidityTol);
    }
  }
}

TEST_CASE("fiber_sample") {
  SUBCASE("south pole fiber is the phase orbit of (1, 0)") {
    const auto pairs = fiber_sample(SpherePoint(0.0, 0.0, -1.0), 4);
    REQUIRE(pairs.size() == 4);
    for (const SpinorPair& p : pairs) {
      CHECK(std::abs(std::abs(p.a()) - 1.0) <= kExactTol);
      CHECK(std::abs(p.b()) <= kExactTol);
      CHECK(sphere_dist(hopf_projection(p), SpherePoint(0.0, 0.0, -1.0)) <=
            kValidityTol);
    }
    // four distinct phases
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < i; ++j) {
        CHECK(std::abs(pairs[i].a() - pairs[j].a()) > 1e-6);
      }
    }
  }

  SUBCASE("north pole uses the (0, 1) chart point") {
    const auto pairs = fiber_sample(SpherePoint(0.0, 0.0, 1.0), 1);
    REQUIRE(pairs.size() == 1);
    CHECK(std::abs(pairs[0].a()) <= kExactTol);
    CHECK(std::abs(std::abs(pairs[0].b()) - 1.0) <= kExactTol);
  }

  SUBCASE("every sample projects back to the target") {
    sim::RandomStream rng(241);
    for (int i = 0; i < 100; ++i) {
      const SpherePoint target(testutil::random_direction(rng).cartesian());
      const auto pairs = fiber_sample(target, 7);
      REQUIRE(pairs.size() == 7);
      for (const SpinorPair& p : pairs) {
        CHECK(std::abs(std::norm(p.a()) + std::norm(p.b()) - 1.0) <=
              kExactTol);
        CHECK(sphere_dist(hopf_projection(p), target) <= kValidityTol);
      }
    }
  }

  SUBCASE("at least one phase required") {
    CHECK_THROWS_AS(fiber_sample(SpherePoint(0.0, 0.0, -1.0), 0),
                    std::invalid_argument);
  }
}

TEST_CASE("spinor and sphere point validation") {
  CHECK_THROWS_AS(SpinorPair(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint(1.0, 1.0, 1.0), std::invalid_argument);
}
