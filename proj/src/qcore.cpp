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

#include "lgsim/qcore.hpp"

#include <cmath>

namespace lgsim {

namespace {

const Complex kI{0.0, 1.0};

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidInput(std::string(what) + ": operator must be a nonempty square matrix");
  }
}

}  // namespace

Sign sign_from_int(int s) {
  if (s == 1) return Sign::Plus;
  if (s == -1) return Sign::Minus;
  throw InvalidInput("sign must be +1 or -1, got " + std::to_string(s));
}

std::string to_string(OperatorRole role) {
  switch (role) {
    case OperatorRole::General:
      return "general";
    case OperatorRole::Hermitian:
      return "hermitian";
    case OperatorRole::Unitary:
      return "unitary";
    case OperatorRole::Projector:
      return "projector";
  }
  return "unknown";
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("shape mismatch in max_abs_diff");
  }
  return max_abs(a - b);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Operator::Operator(Matrix m, OperatorRole role) : m_(std::move(m)), role_(role) {
  require_square(m_, "Operator");
  switch (role_) {
    case OperatorRole::General:
      break;
    case OperatorRole::Hermitian:
      if (!is_hermitian()) throw InvalidInput("operator tagged hermitian is not hermitian");
      break;
    case OperatorRole::Unitary:
      if (!is_unitary()) throw InvalidInput("operator tagged unitary is not unitary");
      break;
    case OperatorRole::Projector:
      if (!is_projector()) throw InvalidInput("operator tagged projector is not a projector");
      break;
  }
}

Operator Operator::identity(std::size_t dim) {
  if (dim == 0) throw InvalidInput("identity: dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Identity(d, d), OperatorRole::Projector);
}

bool Operator::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) <= tol; }

bool Operator::is_unitary(double tol) const {
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

bool Operator::is_projector(double tol) const {
  return is_hermitian(tol) && max_abs(m_ * m_ - m_) <= tol;
}

bool Operator::is_dichotomic(double tol) const {
  return is_hermitian(tol) && max_abs(m_ * m_ - Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

Operator Operator::adjoint() const {
  return Operator(m_.adjoint(), role_);
}

void require_dichotomic(const Operator& q, const char* what) {
  if (!q.is_hermitian()) throw InvalidInput(std::string(what) + " is not hermitian");
  if (!q.is_dichotomic()) {
    throw InvalidInput(std::string(what) + " is not dichotomic: Q^2 deviates from I");
  }
}

void require_hermitian(const Operator& h, const char* what) {
  if (!h.is_hermitian()) throw InvalidInput(std::string(what) + " is not hermitian");
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState QuantumState::from_ket(Ket ket) {
  if (ket.size() == 0) throw InvalidInput("state: ket is empty");
  if (std::abs(ket.norm() - 1.0) > kStructureTol) {
    throw InvalidInput("state: ket is not normalized");
  }
  return QuantumState(std::move(ket));
}

QuantumState QuantumState::from_unnormalized(const Ket& ket) {
  const double n = ket.norm();
  if (ket.size() == 0 || n == 0.0) throw InvalidInput("state: zero ket cannot be normalized");
  return QuantumState(Ket(ket / n));
}

QuantumState QuantumState::from_density(Matrix rho) {
  require_square(rho, "density matrix");
  if (max_abs(rho - rho.adjoint()) > kStructureTol) {
    throw InvalidInput("state: density matrix is not hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kStructureTol) {
    throw InvalidInput("state: density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.eigenvalues().minCoeff() < -kStructureTol) {
    throw InvalidInput("state: density matrix is not positive semidefinite");
  }
  return QuantumState(std::move(rho));
}

std::size_t QuantumState::dim() const {
  return std::visit([](const auto& d) { return static_cast<std::size_t>(d.rows()); }, data_);
}

const Ket& QuantumState::ket() const {
  if (!is_pure()) throw InvalidInput("state: a pure state is required");
  return std::get<Ket>(data_);
}

Matrix QuantumState::density() const {
  if (is_pure()) {
    const Ket& k = std::get<Ket>(data_);
    return k * k.adjoint();
  }
  return std::get<Matrix>(data_);
}

double QuantumState::purity() const { return is_pure() ? 1.0 : lgsim::purity(std::get<Matrix>(data_)); }

std::vector<std::pair<double, Ket>> QuantumState::pure_components() const {
  if (is_pure()) return {{1.0, std::get<Ket>(data_)}};
  Eigen::SelfAdjointEigenSolver<Matrix> es(std::get<Matrix>(data_));
  std::vector<std::pair<double, Ket>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w > 1e-14) out.emplace_back(w, es.eigenvectors().col(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dynamics

Operator unitary(const Operator& h, double t) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const Matrix& v = es.eigenvectors();
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(-kI * es.eigenvalues()(i) * t);
  }
  return Operator(v * phases.asDiagonal() * v.adjoint(), OperatorRole::Unitary);
}

Operator heisenberg(const Operator& a, const Operator& h, double t) {
  if (a.dim() != h.dim()) throw InvalidInput("heisenberg: dimension mismatch between A and H");
  const Matrix u = unitary(h, t).matrix();
  Matrix evolved = u.adjoint() * a.matrix() * u;
  // Hermitian and projector roles survive conjugation by a unitary.
  if (a.role() == OperatorRole::Hermitian || a.role() == OperatorRole::Projector) {
    evolved = 0.5 * (evolved + evolved.adjoint()).eval();
  }
  return Operator(std::move(evolved), a.role());
}

Operator projector(const Operator& q, Sign s) {
  require_dichotomic(q);
  const auto d = static_cast<Eigen::Index>(q.dim());
  return Operator(0.5 * (Matrix::Identity(d, d) + value(s) * q.matrix()), OperatorRole::Projector);
}

Complex expectation(const Matrix& a, const Ket& psi) { return psi.dot(a * psi); }

Complex expectation(const Matrix& a, const QuantumState& state) {
  if (state.is_pure()) return expectation(a, state.ket());
  return (a * state.density()).trace();
}

Matrix partial_trace_last(const Matrix& rho, std::size_t keep_dim, std::size_t traced_dim) {
  const auto k = static_cast<Eigen::Index>(keep_dim);
  const auto t = static_cast<Eigen::Index>(traced_dim);
  if (rho.rows() != k * t || rho.cols() != k * t) {
    throw InvalidInput("partial_trace_last: dimension mismatch");
  }
  Matrix out = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index a = 0; a < t; ++a) acc += rho(i * t + a, j * t + a);
      out(i, j) = acc;
    }
  }
  return out;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

// ---------------------------------------------------------------------------
// Spin-1/2 helpers

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Operator pauli_operator(double cx, double cy, double cz) {
  return Operator::hermitian(cx * pauli_x() + cy * pauli_y() + cz * pauli_z());
}

SpinModel::SpinModel(double omega, std::array<double, 3> q_direction)
    : omega_(omega), n_(q_direction) {
  if (!std::isfinite(omega)) throw InvalidInput("spin model: omega must be finite");
  const double norm = std::sqrt(n_[0] * n_[0] + n_[1] * n_[1] + n_[2] * n_[2]);
  if (std::abs(norm - 1.0) > kStructureTol) {
    throw InvalidInput("spin model: q_direction must be a unit vector");
  }
}

Operator SpinModel::hamiltonian() const { return pauli_operator(0.5 * omega_, 0.0, 0.0); }

Operator SpinModel::observable() const { return pauli_operator(n_[0], n_[1], n_[2]); }

namespace {

struct NamedState {
  const char* name;
  Complex a0;
  Complex a1;
};

const double kRootHalf = 1.0 / std::sqrt(2.0);

const NamedState kNamedStates[] = {
    {"up_z", 1.0, 0.0},
    {"down_z", 0.0, 1.0},
    {"plus_x", kRootHalf, kRootHalf},
    {"minus_x", kRootHalf, -kRootHalf},
    {"plus_y", kRootHalf, Complex(0.0, kRootHalf)},
    {"minus_y", kRootHalf, Complex(0.0, -kRootHalf)},
};

}  // namespace

bool is_named_qubit_state(const std::string& name) {
  for (const auto& s : kNamedStates) {
    if (name == s.name) return true;
  }
  return false;
}

QuantumState named_qubit_state(const std::string& name) {
  for (const auto& s : kNamedStates) {
    if (name == s.name) {
      Ket k(2);
      k << s.a0, s.a1;
      return QuantumState::from_ket(std::move(k));
    }
  }
  throw InvalidInput("unknown named state '" + name + "'");
}

}  // namespace lgsim
