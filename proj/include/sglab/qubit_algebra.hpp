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

#ifndef SGLAB_QUBIT_ALGEBRA_HPP_
#define SGLAB_QUBIT_ALGEBRA_HPP_

#include <complex>
#include <stdexcept>

namespace sglab {

using Complex = std::complex<double>;

// Two tolerance regimes, used consistently across the library:
//   kExactTol:    exact-algebra round trips (hermiticity, normalization,
//                 projector identities) on 2x2 double arithmetic.
//   kValidityTol: validity checks with an inherent one-sided slack
//                 (eigenvalue positivity, purity).
inline constexpr double kExactTol = 1e-12;
inline constexpr double kValidityTol = 1e-10;

/// Plain real 3-vector (Bloch coordinates / physical-space directions).
struct Vec3 {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double dot(const Vec3& o) const { return r1 * o.r1 + r2 * o.r2 + r3 * o.r3; }
  double norm() const;
  Vec3 operator-() const { return {-r1, -r2, -r3}; }
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);

/// Complex 2x2 matrix, row-major. The workhorse for all state algebra.
struct Matrix2 {
  Complex e00{0.0, 0.0};
  Complex e01{0.0, 0.0};
  Complex e10{0.0, 0.0};
  Complex e11{0.0, 0.0};

  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 zero() { return {}; }

  Complex trace() const { return e00 + e11; }
  Complex det() const { return e00 * e11 - e01 * e10; }
  Matrix2 adjoint() const;

  bool is_hermitian(double tol = kExactTol) const;
  /// Eigenvalues of a Hermitian matrix, ascending. Precondition: hermitian.
  void hermitian_eigenvalues(double& lo, double& hi) const;

  Matrix2& operator+=(const Matrix2& o);
  Matrix2& operator-=(const Matrix2& o);
  Matrix2& operator*=(Complex s);
};

Matrix2 operator+(Matrix2 a, const Matrix2& b);
Matrix2 operator-(Matrix2 a, const Matrix2& b);
Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator*(Complex s, Matrix2 a);
Matrix2 operator*(double s, Matrix2 a);

/// max |entry difference|, the metric behind all matrix tolerances here.
double max_abs_diff(const Matrix2& a, const Matrix2& b);

/// The three Pauli matrices in the canonical |0>,|1> representation.
struct PauliSet {
  Matrix2 sigma_x;
  Matrix2 sigma_y;
  Matrix2 sigma_z;
};
const PauliSet& pauli();

/// Which of the two split beams a stage transmits (or which detector fires).
enum class Port : int { plus = +1, minus = -1 };

inline int sign(Port p) { return static_cast<int>(p); }
Port opposite(Port p);

/// A unit direction in physical space, stored as spherical angles with
/// theta in [0, pi] and phi canonicalized into [0, 2*pi).  At the poles
/// (theta in {0, pi}) phi is undefined and canonicalizes to 0.
class Direction {
 public:
  /// theta outside [0, pi] (beyond a 1e-12 clamp) is rejected; phi may be
  /// any finite value and is wrapped into [0, 2*pi).
  Direction(double theta, double phi);

  /// Accepts a near-unit vector (norm within 1e-6 of 1), normalizes exactly.
  static Direction from_cartesian(double r1, double r2, double r3);
  static Direction from_cartesian(const Vec3& v) {
    return from_cartesian(v.r1, v.r2, v.r3);
  }

  static Direction e1() { return from_cartesian(1.0, 0.0, 0.0); }
  static Direction e2() { return from_cartesian(0.0, 1.0, 0.0); }
  static Direction e3() { return Direction(0.0, 0.0); }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  Vec3 cartesian() const;

 private:
  double theta_;
  double phi_;
};

/// Normalized amplitude pair over the computational basis, stored in
/// canonical global phase: amp0 real >= 0, and when amp0 is (numerically)
/// zero, amp1 real > 0.  Equality of states is then plain component equality.
class PureState {
 public:
  /// Requires |amp0|^2 + |amp1|^2 = 1 within kExactTol; canonicalizes phase.
  PureState(Complex amp0, Complex amp1);

  Complex amp0() const { return amp0_; }
  Complex amp1() const { return amp1_; }

 private:
  Complex amp0_;
  Complex amp1_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const PureState& a, const PureState& b);

/// |psi><psi|.
Matrix2 outer(const PureState& psi);

/// 2x2 Hermitian, unit-trace, positive matrix: preparations and averages.
class DensityMatrix {
 public:
  /// Validates hermiticity and unit trace within kExactTol and eigenvalue
  /// positivity within kValidityTol.
  explicit DensityMatrix(const Matrix2& m);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed();

  const Matrix2& matrix() const { return m_; }
  double purity() const;  // Tr(rho^2)
  bool is_pure() const;   // Tr(rho^2) = 1 within kValidityTol

 private:
  Matrix2 m_;
};

/// Dichotomic projective measurement: orthogonal projectors summing to 1.
class Measurement {
 public:
  /// Validates M+ + M- = 1, idempotency and mutual orthogonality (kExactTol).
  Measurement(const Matrix2& plus_projector, const Matrix2& minus_projector);

  const Matrix2& plus_projector() const { return plus_; }
  const Matrix2& minus_projector() const { return minus_; }
  const Matrix2& projector(Port p) const {
    return p == Port::plus ? plus_ : minus_;
  }

 private:
  Matrix2 plus_;
  Matrix2 minus_;
};

/// The state transmitted by an ideal device oriented along `dir`:
///   port +:  cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
///   port -:  sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>
/// The two are orthogonal; their directions are antipodal on the sphere.
PureState state_from_direction(const Direction& dir, Port port);

/// rho = (1 + r.sigma)/2 with r the (sign-adjusted) direction vector.
DensityMatrix density_from_direction(const Direction& dir, Port port);

/// The projective test along `dir`: projectors onto the two port states.
Measurement measurement_from_direction(const Direction& dir);

/// Bloch coordinates r_i = Tr(rho sigma_i). Norm <= 1; = 1 iff pure.
Vec3 bloch_vector(const DensityMatrix& rho);

/// Tr(rho * effect). Values within kExactTol of 0 or 1 snap to the exact
/// boundary; larger excursions outside [0,1] throw (they indicate a broken
/// effect, not round-off). Non-hermitian effects (tol 1e-10) are rejected.
double born_probability(const DensityMatrix& rho, const Matrix2& effect);

/// The antipodal direction, (pi - theta, phi + pi) reduced to canonical form.
Direction antipode(const Direction& dir);

}  // namespace sglab

#endif  // SGLAB_QUBIT_ALGEBRA_HPP_
