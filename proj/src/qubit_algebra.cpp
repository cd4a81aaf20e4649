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

#include "sglab/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace sglab {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Below this magnitude an amplitude is treated as exactly zero when fixing
// the global phase; well under every tolerance used by callers.
constexpr double kAmplitudeZero = 1e-15;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

double wrap_phi(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.r1 + b.r1, a.r2 + b.r2, a.r3 + b.r3};
}

Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.r1 - b.r1, a.r2 - b.r2, a.r3 - b.r3};
}

Vec3 operator*(double s, const Vec3& v) {
  return {s * v.r1, s * v.r2, s * v.r3};
}

Matrix2 Matrix2::adjoint() const {
  return {std::conj(e00), std::conj(e10), std::conj(e01), std::conj(e11)};
}

bool Matrix2::is_hermitian(double tol) const {
  return std::abs(e00.imag()) <= tol && std::abs(e11.imag()) <= tol &&
         std::abs(e01 - std::conj(e10)) <= tol;
}

void Matrix2::hermitian_eigenvalues(double& lo, double& hi) const {
  const double a = e00.real();
  const double d = e11.real();
  const double mean = 0.5 * (a + d);
  // symmetrized off-diagonal, exact for hermitian input
  const Complex off = 0.5 * (e01 + std::conj(e10));
  const double half_gap =
      std::sqrt(0.25 * (a - d) * (a - d) + std::norm(off));
  lo = mean - half_gap;
  hi = mean + half_gap;
}

Matrix2& Matrix2::operator+=(const Matrix2& o) {
  e00 += o.e00;
  e01 += o.e01;
  e10 += o.e10;
  e11 += o.e11;
  return *this;
}

Matrix2& Matrix2::operator-=(const Matrix2& o) {
  e00 -= o.e00;
  e01 -= o.e01;
  e10 -= o.e10;
  e11 -= o.e11;
  return *this;
}

Matrix2& Matrix2::operator*=(Complex s) {
  e00 *= s;
  e01 *= s;
  e10 *= s;
  e11 *= s;
  return *this;
}

Matrix2 operator+(Matrix2 a, const Matrix2& b) { return a += b; }
Matrix2 operator-(Matrix2 a, const Matrix2& b) { return a -= b; }

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  return {a.e00 * b.e00 + a.e01 * b.e10, a.e00 * b.e01 + a.e01 * b.e11,
          a.e10 * b.e00 + a.e11 * b.e10, a.e10 * b.e01 + a.e11 * b.e11};
}

Matrix2 operator*(Complex s, Matrix2 a) { return a *= s; }
Matrix2 operator*(double s, Matrix2 a) { return a *= Complex(s, 0.0); }

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  return std::max({std::abs(a.e00 - b.e00), std::abs(a.e01 - b.e01),
                   std::abs(a.e10 - b.e10), std::abs(a.e11 - b.e11)});
}

const PauliSet& pauli() {
  static const PauliSet set{
      Matrix2{0.0, 1.0, 1.0, 0.0},
      Matrix2{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0},
      Matrix2{1.0, 0.0, 0.0, -1.0}};
  return set;
}

Port opposite(Port p) { return p == Port::plus ? Port::minus : Port::plus; }

Direction::Direction(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    fail("direction angles must be finite");
  }
  if (theta < -kExactTol || theta > kPi + kExactTol) {
    std::ostringstream msg;
    msg << "theta must lie in [0, pi], got " << theta;
    fail(msg.str());
  }
  theta_ = std::clamp(theta, 0.0, kPi);
  if (theta_ <= kAmplitudeZero) {
    theta_ = 0.0;
    phi_ = 0.0;
  } else if (kPi - theta_ <= kAmplitudeZero) {
    theta_ = kPi;
    phi_ = 0.0;
  } else {
    phi_ = wrap_phi(phi);
  }
}

Direction Direction::from_cartesian(double r1, double r2, double r3) {
  const double norm = std::sqrt(r1 * r1 + r2 * r2 + r3 * r3);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "direction vector must be unit length, got norm " << norm;
    fail(msg.str());
  }
  const double z = std::clamp(r3 / norm, -1.0, 1.0);
  return Direction(std::acos(z), std::atan2(r2 / norm, r1 / norm));
}

Vec3 Direction::cartesian() const {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

PureState::PureState(Complex amp0, Complex amp1) {
  const double norm2 = std::norm(amp0) + std::norm(amp1);
  if (!(std::abs(norm2 - 1.0) <= kExactTol)) {
    std::ostringstream msg;
    msg << "state must be normalized, got |amp0|^2 + |amp1|^2 = " << norm2;
    fail(msg.str());
  }
  const double mag0 = std::abs(amp0);
  if (mag0 > kAmplitudeZero) {
    const Complex phase = std::conj(amp0) / mag0;
    amp0_ = mag0;
    amp1_ = amp1 * phase;
  } else {
    amp0_ = 0.0;
    amp1_ = std::abs(amp1);
  }
}

Complex inner_product(const PureState& a, const PureState& b) {
  return std::conj(a.amp0()) * b.amp0() + std::conj(a.amp1()) * b.amp1();
}

Matrix2 outer(const PureState& psi) {
  const Complex a = psi.amp0(), b = psi.amp1();
  return {a * std::conj(a), a * std::conj(b), b * std::conj(a),
          b * std::conj(b)};
}

DensityMatrix::DensityMatrix(const Matrix2& m) : m_(m) {
  if (!m_.is_hermitian(kExactTol)) {
    fail("density matrix must be hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kExactTol) {
    fail("density matrix must have unit trace");
  }
  double lo = 0.0, hi = 0.0;
  m_.hermitian_eigenvalues(lo, hi);
  if (lo < -kValidityTol) {
    std::ostringstream msg;
    msg << "density matrix must be positive, got eigenvalue " << lo;
    fail(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(outer(psi));
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix2{0.5, 0.0, 0.0, 0.5});
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

bool DensityMatrix::is_pure() const {
  return std::abs(purity() - 1.0) <= kValidityTol;
}

Measurement::Measurement(const Matrix2& plus_projector,
                         const Matrix2& minus_projector)
    : plus_(plus_projector), minus_(minus_projector) {
  if (!plus_.is_hermitian(kExactTol) || !minus_.is_hermitian(kExactTol)) {
    fail("measurement projectors must be hermitian");
  }
  if (max_abs_diff(plus_ + minus_, Matrix2::identity()) > kExactTol) {
    fail("measurement projectors must sum to the identity");
  }
  if (max_abs_diff(plus_ * plus_, plus_) > kExactTol ||
      max_abs_diff(minus_ * minus_, minus_) > kExactTol) {
    fail("measurement projectors must be idempotent");
  }
  if (max_abs_diff(plus_ * minus_, Matrix2::zero()) > kExactTol) {
    fail("measurement projectors must be mutually orthogonal");
  }
}

PureState state_from_direction(const Direction& dir, Port port) {
  const double half = 0.5 * dir.theta();
  const Complex phase = std::polar(1.0, dir.phi());
  if (port == Port::plus) {
    return PureState(std::cos(half), phase * std::sin(half));
  }
  return PureState(std::sin(half), -phase * std::cos(half));
}

DensityMatrix density_from_direction(const Direction& dir, Port port) {
  const Vec3 r = static_cast<double>(sign(port)) * dir.cartesian();
  return DensityMatrix(Matrix2{0.5 * (1.0 + r.r3),
                               0.5 * Complex(r.r1, -r.r2),
                               0.5 * Complex(r.r1, r.r2),
                               0.5 * (1.0 - r.r3)});
}

Measurement measurement_from_direction(const Direction& dir) {
  return Measurement(outer(state_from_direction(dir, Port::plus)),
                     outer(state_from_direction(dir, Port::minus)));
}

Vec3 bloch_vector(const DensityMatrix& rho) {
  const PauliSet& s = pauli();
  const Matrix2& m = rho.matrix();
  return {(m * s.sigma_x).trace().real(), (m * s.sigma_y).trace().real(),
          (m * s.sigma_z).trace().real()};
}

double born_probability(const DensityMatrix& rho, const Matrix2& effect) {
  if (!effect.is_hermitian(kValidityTol)) {
    fail("effect must be hermitian");
  }
  double p = (rho.matrix() * effect).trace().real();
  // Snap boundary round-off to the exact boundary, so that deterministic
  // outcomes stay deterministic downstream.  Anything further out signals a
  // broken effect, which clamping would hide.
  if (std::abs(p) <= kExactTol) {
    p = 0.0;
  } else if (std::abs(p - 1.0) <= kExactTol) {
    p = 1.0;
  } else if (p < 0.0 || p > 1.0) {
    std::ostringstream msg;
    msg << "effect is not a valid probability operator: Tr(rho M) = " << p;
    throw std::domain_error(msg.str());
  }
  return p;
}

Direction antipode(const Direction& dir) {
  return Direction(kPi - dir.theta(), dir.phi() + kPi);
}

}  // namespace sglab
