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

#ifndef SGLAB_HOPF_GEOMETRY_HPP_
#define SGLAB_HOPF_GEOMETRY_HPP_

#include <vector>

#include "sglab/qubit_algebra.hpp"

namespace sglab::hopf {

// The geometry of indistinguishable states: amplitude pairs live on S^3,
// phase-equivalent pairs form circle fibers, and the projection
// S^3 -> S^2 factors through the complex plane via the h chart and the
// equatorial stereographic projection.
//
// Orientation note: this projection places |0> = (1,0) at the SOUTH pole
// (0,0,-1), i.e. it equals the Bloch vector with the third coordinate
// flipped.  The convention is kept as-is and tested; see hopf_projection.

using PlanePoint = Complex;

/// A point (a, b) on S^3 in C^2: |a|^2 + |b|^2 = 1 within kExactTol
/// (renormalized exactly on construction).
class SpinorPair {
 public:
  SpinorPair(Complex a, Complex b);

  /// View a canonical qubit state as a point of S^3.
  explicit SpinorPair(const PureState& psi)
      : SpinorPair(psi.amp0(), psi.amp1()) {}

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  SpinorPair with_phase(double phase) const;

 private:
  Complex a_;
  Complex b_;
};

/// A point of S^2: unit 3-vector within kExactTol (renormalized exactly).
class SpherePoint {
 public:
  SpherePoint(double x1, double x2, double x3);
  explicit SpherePoint(const Vec3& v) : SpherePoint(v.r1, v.r2, v.r3) {}

  double x1() const { return x1_; }
  double x2() const { return x2_; }
  double x3() const { return x3_; }
  Vec3 vec() const { return {x1_, x2_, x3_}; }

 private:
  double x1_;
  double x2_;
  double x3_;
};

/// The chart b/a identifying a phase class with one complex number.
/// Undefined at a = 0 (the point at infinity); throws std::domain_error
/// when |a| <= 1e-12.
PlanePoint h_map(const SpinorPair& p);

/// Equatorial stereographic projection sqrt(1-x3^2)/(1-x3) * e^{i theta},
/// theta = atan2(x2, x1).  The north pole (0,0,1) is excluded (throws);
/// the south pole maps to 0.
PlanePoint stereographic(const SpherePoint& p);

/// (2X, 2Y, X^2+Y^2-1) / (X^2+Y^2+1); total on C, lands on S^2.
SpherePoint stereographic_inverse(PlanePoint z);

/// (2 Re(b a*), 2 Im(b a*), |b|^2 - |a|^2): the composed projection
/// S^3 -> S^2, total (no chart singularity) and phase-invariant.
SpherePoint hopf_projection(const SpinorPair& p);

/// n_phases points of the fiber over `target`: e^{i phi_k} p0 with phases
/// uniform on [0, 2*pi) and p0 the canonical preimage
///   a = sqrt((1-x3)/2) >= 0,  b = (x1 + i x2) / (2a)
/// (for the north pole, p0 = (0, 1)).  Every sample projects back to target.
std::vector<SpinorPair> fiber_sample(const SpherePoint& target, int n_phases);

}  // namespace sglab::hopf

#endif  // SGLAB_HOPF_GEOMETRY_HPP_
