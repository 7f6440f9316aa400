// Copyright 2026 The lgsim Authors
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

// Random scenario generators and reference implementations that avoid the
// library's own code paths.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "lgsim/qcore.hpp"

namespace lgsim::testing {

inline constexpr double kPi = std::numbers::pi;
inline const Complex kI{0.0, 1.0};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double normal() { return normal_(gen_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Matrix ginibre(Eigen::Index d) {
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = Complex(normal(), normal());
    }
    return m;
  }
  Matrix hermitian(Eigen::Index d) {
    const Matrix g = ginibre(d);
    return 0.5 * (g + g.adjoint());
  }
  Matrix unitary(Eigen::Index d) { return Eigen::HouseholderQR<Matrix>(ginibre(d)).householderQ(); }
  /// U diag(+-1) U^dagger with both signs present.
  Matrix dichotomic(Eigen::Index d) {
    Eigen::VectorXcd diag(d);
    const Eigen::Index n_plus = integer(1, static_cast<int>(d) - 1);
    for (Eigen::Index i = 0; i < d; ++i) diag(i) = i < n_plus ? 1.0 : -1.0;
    const Matrix u = unitary(d);
    return u * diag.asDiagonal() * u.adjoint();
  }
  Ket ket(Eigen::Index d) {
    Ket k(d);
    for (Eigen::Index i = 0; i < d; ++i) k(i) = Complex(normal(), normal());
    return k / k.norm();
  }
  Matrix density(Eigen::Index d) {
    const Matrix g = ginibre(d);
    const Matrix rho = g * g.adjoint();
    return rho / rho.trace();
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

inline Matrix sx() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix sy() { return (Matrix(2, 2) << 0, -kI, kI, 0).finished(); }
inline Matrix sz() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }
inline Matrix id(Eigen::Index d) { return Matrix::Identity(d, d); }

/// e^{-iHt} by Pade approximation.
inline Matrix ref_unitary(const Matrix& h, double t) {
  return (Complex(0.0, -t) * h).exp();
}

inline Matrix ref_heisenberg(const Matrix& a, const Matrix& h, double t) {
  const Matrix u = ref_unitary(h, t);
  return u.adjoint() * a * u;
}

/// sigma_z(t) under H = (omega/2) sigma_x.
inline Matrix spin_sz(double omega_t) {
  return std::cos(omega_t) * sz() + std::sin(omega_t) * sy();
}

/// e^{-i (theta/2) sigma_x}.
inline Matrix spin_u(double theta) {
  return std::cos(theta / 2) * id(2) - kI * std::sin(theta / 2) * sx();
}

inline Ket ket2(Complex a, Complex b) {
  Ket k(2);
  k << a, b;
  return k;
}

inline Ket up_z() { return ket2(1, 0); }
inline Ket down_z() { return ket2(0, 1); }
inline Ket plus_x() { return ket2(1, 1) / std::sqrt(2.0); }
inline Ket minus_x() { return ket2(1, -1) / std::sqrt(2.0); }
inline Ket plus_y() { return ket2(1, kI) / std::sqrt(2.0); }

/// Sequential p(s1, s2) by direct Schrodinger-picture amplitudes.
inline double ref_sequential(const Matrix& q, const Matrix& h, const Ket& psi, double t1,
                             double t2, int s1, int s2) {
  const auto d = q.rows();
  const Matrix p1 = 0.5 * (id(d) + s1 * q);
  const Matrix p2 = 0.5 * (id(d) + s2 * q);
  const Ket amp = p2 * ref_unitary(h, t2 - t1) * p1 * ref_unitary(h, t1) * psi;
  return amp.squaredNorm();
}

}  // namespace lgsim::testing
