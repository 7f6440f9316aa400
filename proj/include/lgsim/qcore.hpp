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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace lgsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

/// Tolerance on max-entry deviation used when validating role tags
/// (hermiticity, unitarity, projector idempotence) and the dichotomy Q^2 = I.
inline constexpr double kStructureTol = 1e-10;

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is mathematically undefined for the given input
/// (e.g. normalising by a vanishing expectation value).
class UndefinedResult : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Sign : int { Minus = -1, Plus = 1 };

constexpr double value(Sign s) { return static_cast<double>(static_cast<int>(s)); }
constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
Sign sign_from_int(int s);

inline constexpr std::array<Sign, 2> kSigns{Sign::Plus, Sign::Minus};

enum class OperatorRole { General, Hermitian, Unitary, Projector };

std::string to_string(OperatorRole role);

/// Dense square operator carrying a validated role tag.
class Operator {
 public:
  Operator() = default;
  /// Validates the matrix against the role; throws InvalidInput on failure.
  explicit Operator(Matrix m, OperatorRole role = OperatorRole::General);

  static Operator identity(std::size_t dim);
  static Operator hermitian(Matrix m) { return Operator(std::move(m), OperatorRole::Hermitian); }
  static Operator unitary(Matrix m) { return Operator(std::move(m), OperatorRole::Unitary); }
  static Operator projector(Matrix m) { return Operator(std::move(m), OperatorRole::Projector); }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  OperatorRole role() const { return role_; }

  bool is_hermitian(double tol = kStructureTol) const;
  bool is_unitary(double tol = kStructureTol) const;
  bool is_projector(double tol = kStructureTol) const;
  /// Q^2 = I and Q = Q^dagger.
  bool is_dichotomic(double tol = kStructureTol) const;

  Operator adjoint() const;

 private:
  Matrix m_;
  OperatorRole role_ = OperatorRole::General;
};

/// Max absolute entry of a - b; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Ket kron(const Ket& a, const Ket& b);

/// Pure ket or density matrix on a d-dimensional Hilbert space.
class QuantumState {
 public:
  /// Throws InvalidInput unless the ket has unit norm.
  static QuantumState from_ket(Ket ket);
  /// Normalises a nonzero ket.
  static QuantumState from_unnormalized(const Ket& ket);
  /// Throws InvalidInput unless rho is hermitian, PSD and has unit trace.
  static QuantumState from_density(Matrix rho);

  std::size_t dim() const;
  bool is_pure() const { return std::holds_alternative<Ket>(data_); }
  /// Throws InvalidInput for a mixed state.
  const Ket& ket() const;
  Matrix density() const;
  double purity() const;

  /// Eigen-decomposition into (weight, ket) pairs with weight > 0; a pure
  /// state yields itself with weight one.
  std::vector<std::pair<double, Ket>> pure_components() const;

 private:
  explicit QuantumState(std::variant<Ket, Matrix> data) : data_(std::move(data)) {}
  std::variant<Ket, Matrix> data_;
};

/// e^{-iHt}, computed by hermitian eigendecomposition.
Operator unitary(const Operator& h, double t);

/// e^{iHt} A e^{-iHt}.
Operator heisenberg(const Operator& a, const Operator& h, double t);

/// (I + sQ)/2 for a dichotomic Q.
Operator projector(const Operator& q, Sign s);

/// Throws InvalidInput naming `what` unless q is hermitian with q^2 = I.
void require_dichotomic(const Operator& q, const char* what = "Q");
void require_hermitian(const Operator& h, const char* what = "H");

Complex expectation(const Matrix& a, const Ket& psi);
Complex expectation(const Matrix& a, const QuantumState& state);

/// Trace over the trailing factor of dimension `traced_dim`.
Matrix partial_trace_last(const Matrix& rho, std::size_t keep_dim, std::size_t traced_dim);
double purity(const Matrix& rho);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// cx*sx + cy*sy + cz*sz as a hermitian operator.
Operator pauli_operator(double cx, double cy, double cz);

/// Two-level model with H = (omega/2) sigma_x and Q = n . sigma.
class SpinModel {
 public:
  explicit SpinModel(double omega, std::array<double, 3> q_direction = {0.0, 0.0, 1.0});

  double omega() const { return omega_; }
  const std::array<double, 3>& q_direction() const { return n_; }
  Operator hamiltonian() const;
  Operator observable() const;

 private:
  double omega_;
  std::array<double, 3> n_;
};

/// Named qubit states: up_z, down_z, plus_x, minus_x, plus_y, minus_y.
QuantumState named_qubit_state(const std::string& name);
bool is_named_qubit_state(const std::string& name);

}  // namespace lgsim
