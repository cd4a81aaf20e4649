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

#include "sglab/hopf_geometry.hpp"

#include <cmath>
#include <sstream>

namespace sglab::hopf {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

}  // namespace

SpinorPair::SpinorPair(Complex a, Complex b) : a_(a), b_(b) {
  const double n2 = std::norm(a_) + std::norm(b_);
  if (!(std::abs(n2 - 1.0) <= kExactTol)) {
    std::ostringstream msg;
    msg << "spinor pair must lie on S^3, got |a|^2 + |b|^2 = " << n2;
    fail(msg.str());
  }
  const double scale = 1.0 / std::sqrt(n2);
  a_ *= scale;
  b_ *= scale;
}

SpinorPair SpinorPair::with_phase(double phase) const {
  const Complex factor = std::polar(1.0, phase);
  return SpinorPair(factor * a_, factor * b_);
}

SpherePoint::SpherePoint(double x1, double x2, double x3)
    : x1_(x1), x2_(x2), x3_(x3) {
  const double n2 = x1_ * x1_ + x2_ * x2_ + x3_ * x3_;
  if (!(std::abs(n2 - 1.0) <= kExactTol)) {
    std::ostringstream msg;
    msg << "sphere point must be unit length, got squared norm " << n2;
    fail(msg.str());
  }
  const double scale = 1.0 / std::sqrt(n2);
  x1_ *= scale;
  x2_ *= scale;
  x3_ *= scale;
}

PlanePoint h_map(const SpinorPair& p) {
  if (std::abs(p.a()) <= kExactTol) {
    throw std::domain_error(
        "h chart undefined at a = 0 (the point at infinity)");
  }
  return p.b() / p.a();
}

PlanePoint stereographic(const SpherePoint& p) {
  if (std::abs(p.x3() - 1.0) < kExactTol) {
    throw std::domain_error(
        "stereographic projection excludes the north pole (0, 0, 1)");
  }
  const double rho =
      std::sqrt(std::max(0.0, 1.0 - p.x3() * p.x3())) / (1.0 - p.x3());
  return std::polar(rho, std::atan2(p.x2(), p.x1()));
}

SpherePoint stereographic_inverse(PlanePoint z) {
  const double s = std::norm(z);
  const double denom = s + 1.0;
  return SpherePoint(2.0 * z.real() / denom, 2.0 * z.imag() / denom,
                     (s - 1.0) / denom);
}

SpherePoint hopf_projection(const SpinorPair& p) {
  const Complex w = p.b() * std::conj(p.a());
  return SpherePoint(2.0 * w.real(), 2.0 * w.imag(),
                     std::norm(p.b()) - std::norm(p.a()));
}

std::vector<SpinorPair> fiber_sample(const SpherePoint& target,
                                     int n_phases) {
  if (n_phases < 1) fail("fiber sampling needs at least one phase");

  // Canonical preimage (a real >= 0; (0,1) over the north pole), computed in
  // whichever hemisphere chart keeps the division well conditioned.  The
  // PureState constructor supplies exactly the canonical phase.
  PureState canonical = [&target]() {
    if (target.x3() <= 0.0) {
      const double ar = std::sqrt(0.5 * (1.0 - target.x3()));
      return PureState(ar, Complex(target.x1(), target.x2()) / (2.0 * ar));
    }
    const double br = std::sqrt(0.5 * (1.0 + target.x3()));
    return PureState(Complex(target.x1(), -target.x2()) / (2.0 * br), br);
  }();

  const SpinorPair base(canonical);
  std::vector<SpinorPair> samples;
  samples.reserve(static_cast<std::size_t>(n_phases));
  for (int k = 0; k < n_phases; ++k) {
    samples.push_back(base.with_phase(2.0 * kPi * k / n_phases));
  }
  return samples;
}

}  // namespace sglab::hopf
