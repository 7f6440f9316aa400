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

#include "lgsim/twotime.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgsim {

namespace {

const Complex kI{0.0, 1.0};

// Eigenstate checks on caller-supplied kets are looser than the structural
// tolerance: the kets typically come out of an eigensolver.
constexpr double kEigenTol = 1e-8;
constexpr double kVanishingD2 = 1e-12;

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_state_dim(const TwoTimeFrame& frame, std::size_t dim) {
  if (dim != frame.dim()) {
    throw InvalidInput("state dimension " + std::to_string(dim) +
                       " does not match operator dimension " + std::to_string(frame.dim()));
  }
}

}  // namespace

double IdentityResiduals::max() const {
  return std::max({q1_c_commutator, q2_c_commutator, q1_d_anticommutator, q2_d_anticommutator,
                   c_d_commutator, squares});
}

IdentityResiduals TwoTimeFrame::residuals() const {
  const Matrix& q1 = q_t1.matrix();
  const Matrix& q2 = q_t2.matrix();
  const Matrix& c = c_op.matrix();
  const Matrix& d = d_op.matrix();
  const auto n = static_cast<Eigen::Index>(dim());
  IdentityResiduals r;
  r.q1_c_commutator = max_abs(commutator(q1, c));
  r.q2_c_commutator = max_abs(commutator(q2, c));
  r.q1_d_anticommutator = max_abs(anticommutator(q1, d));
  r.q2_d_anticommutator = max_abs(anticommutator(q2, d));
  r.c_d_commutator = max_abs(commutator(c, d));
  r.squares = max_abs(c * c + d * d - Matrix::Identity(n, n));
  return r;
}

TwoTimeFrame build_frame(const Operator& q, const Operator& h, double t1, double t2) {
  require_dichotomic(q);
  require_hermitian(h);
  if (q.dim() != h.dim()) throw InvalidInput("build_frame: Q and H dimensions differ");
  if (!(t2 >= t1)) throw InvalidInput("build_frame: requires t2 >= t1");

  const Operator qh = Operator::hermitian(hermitian_part(q.matrix()));
  TwoTimeFrame f;
  f.q = qh;
  f.h = Operator::hermitian(hermitian_part(h.matrix()));
  f.t1 = t1;
  f.t2 = t2;
  f.q_t1 = heisenberg(qh, f.h, t1);
  f.q_t2 = heisenberg(qh, f.h, t2);
  const Matrix& q1 = f.q_t1.matrix();
  const Matrix& q2 = f.q_t2.matrix();
  f.c_op = Operator::hermitian(hermitian_part(0.5 * anticommutator(q1, q2)));
  f.d_op = Operator::hermitian(hermitian_part(0.5 * kI * commutator(q2, q1)));
  return f;
}

HistoryPair history_pair(const TwoTimeFrame& frame, const QuantumState& psi) {
  if (!psi.is_pure()) {
    throw InvalidInput("history_pair: history kets require a pure state");
  }
  require_state_dim(frame, psi.dim());
  const auto n = static_cast<Eigen::Index>(frame.dim());
  const Matrix product = frame.q_t2.matrix() * frame.q_t1.matrix();
  const Matrix u2 = unitary(frame.h, frame.t2).matrix();
  const Matrix id = Matrix::Identity(n, n);

  HistoryPair hp;
  hp.same = u2 * (0.5 * (id + product) * psi.ket());
  hp.diff = u2 * (0.5 * (id - product) * psi.ket());
  hp.p_same = hp.same.squaredNorm();
  hp.p_diff = hp.diff.squaredNorm();
  return hp;
}

double correlator_expectation(const TwoTimeFrame& frame, const QuantumState& state) {
  require_state_dim(frame, state.dim());
  return expectation(frame.c_op.matrix(), state).real();
}

double interference_expectation(const TwoTimeFrame& frame, const QuantumState& state) {
  require_state_dim(frame, state.dim());
  return expectation(frame.d_op.matrix(), state).real();
}

std::pair<double, double> same_diff_probabilities(const TwoTimeFrame& frame,
                                                  const QuantumState& state) {
  require_state_dim(frame, state.dim());
  double p_same = 0.0;
  double p_diff = 0.0;
  for (const auto& [w, k] : state.pure_components()) {
    const HistoryPair hp = history_pair(frame, QuantumState::from_unnormalized(k));
    p_same += w * hp.p_same;
    p_diff += w * hp.p_diff;
  }
  return {p_same, p_diff};
}

std::vector<Ket> plus_eigenbasis(const TwoTimeFrame& frame) {
  Eigen::SelfAdjointEigenSolver<Matrix> qs(frame.q_t1.matrix());
  std::vector<Eigen::Index> plus_cols;
  for (Eigen::Index i = 0; i < qs.eigenvalues().size(); ++i) {
    if (qs.eigenvalues()(i) > 0.0) plus_cols.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(plus_cols.size());
  if (k == 0) return {};
  Matrix basis(qs.eigenvectors().rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) basis.col(j) = qs.eigenvectors().col(plus_cols[j]);

  // C commutes with Q(t1), so it is block diagonal; diagonalise its + block.
  const Matrix c_block = hermitian_part(basis.adjoint() * frame.c_op.matrix() * basis);
  Eigen::SelfAdjointEigenSolver<Matrix> cs(c_block);
  const Matrix rotated = basis * cs.eigenvectors();
  std::vector<Ket> out;
  out.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) out.emplace_back(rotated.col(j));
  return out;
}

std::vector<Ket> pm_basis(const TwoTimeFrame& frame, std::span<const Ket> plus_states) {
  const Matrix& q1 = frame.q_t1.matrix();
  const Matrix& d = frame.d_op.matrix();
  const Matrix d2 = d * d;
  std::vector<Ket> out;
  out.reserve(plus_states.size());
  for (std::size_t i = 0; i < plus_states.size(); ++i) {
    const Ket& plus = plus_states[i];
    const std::string where = "pm_basis: input " + std::to_string(i);
    if (static_cast<std::size_t>(plus.size()) != frame.dim()) {
      throw InvalidInput(where + " has the wrong dimension");
    }
    if (std::abs(plus.norm() - 1.0) > kStructureTol) {
      throw InvalidInput(where + " is not normalized");
    }
    if ((q1 * plus - plus).norm() > kEigenTol) {
      throw InvalidInput(where + " is not a +1 eigenstate of Q(t1)");
    }
    const double d2_mean = expectation(d2, plus).real();
    if (d2_mean <= kVanishingD2) {
      throw UndefinedResult(where + ": <D^2> vanishes, so the mapping to -1 states is undefined");
    }
    if ((d2 * plus - d2_mean * plus).norm() > kEigenTol) {
      throw InvalidInput(where + " is not an eigenstate of D^2 (choose a C eigenbasis)");
    }
    out.emplace_back(d * plus / std::sqrt(d2_mean));
  }
  return out;
}

double superposition_correlator(const TwoTimeFrame& frame, const Ket& plus_ket,
                                const Ket& minus_ket, Complex a1, Complex a2) {
  if (std::abs(std::norm(a1) + std::norm(a2) - 1.0) > kStructureTol) {
    throw InvalidInput("superposition_correlator: |a1|^2 + |a2|^2 must equal 1");
  }
  if (static_cast<std::size_t>(plus_ket.size()) != frame.dim() ||
      static_cast<std::size_t>(minus_ket.size()) != frame.dim()) {
    throw InvalidInput("superposition_correlator: ket dimension mismatch");
  }
  const Ket psi = a1 * plus_ket + a2 * minus_ket;
  return expectation(frame.c_op.matrix(), psi).real();
}

}  // namespace lgsim
