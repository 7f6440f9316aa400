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

#include <span>
#include <vector>

#include "lgsim/qcore.hpp"

namespace lgsim {

/// Max-entry residuals of the algebraic identities satisfied by the
/// correlator operator C = {Q1,Q2}/2 and the interference operator
/// D = (i/2)[Q2,Q1]. All vanish whenever Q^2 = I.
struct IdentityResiduals {
  double q1_c_commutator = 0.0;      // [Q(t1), C]
  double q2_c_commutator = 0.0;      // [Q(t2), C]
  double q1_d_anticommutator = 0.0;  // {Q(t1), D}
  double q2_d_anticommutator = 0.0;  // {Q(t2), D}
  double c_d_commutator = 0.0;       // [C, D]
  double squares = 0.0;              // C^2 + D^2 - I

  double max() const;
};

/// Heisenberg-picture data for one pair of times.
struct TwoTimeFrame {
  Operator q;
  Operator h;
  double t1 = 0.0;
  double t2 = 0.0;
  Operator q_t1;
  Operator q_t2;
  Operator c_op;
  Operator d_op;

  std::size_t dim() const { return q.dim(); }
  IdentityResiduals residuals() const;
};

/// Requires dichotomic Q, hermitian H and t2 >= t1.
TwoTimeFrame build_frame(const Operator& q, const Operator& h, double t1, double t2);

/// Coarse-grained history states in the Schrodinger picture at t2:
///   |same> = e^{-iHt2} (1 + Q(t2)Q(t1))/2 |psi>
///   |diff> = e^{-iHt2} (1 - Q(t2)Q(t1))/2 |psi>
struct HistoryPair {
  Ket same;
  Ket diff;
  double p_same = 0.0;
  double p_diff = 0.0;

  Complex overlap() const { return same.dot(diff); }  // <same|diff>
};

/// Requires a pure state of matching dimension.
HistoryPair history_pair(const TwoTimeFrame& frame, const QuantumState& psi);

/// <C> and <D>; defined for mixed states too.
double correlator_expectation(const TwoTimeFrame& frame, const QuantumState& state);
double interference_expectation(const TwoTimeFrame& frame, const QuantumState& state);

/// p(same), p(diff) for any state: mixed inputs are convex combinations of
/// their eigenvectors' history probabilities.
std::pair<double, double> same_diff_probabilities(const TwoTimeFrame& frame,
                                                  const QuantumState& state);

/// Orthonormal basis of the +1 eigenspace of Q(t1) in which C is diagonal,
/// i.e. valid inputs for pm_basis.
std::vector<Ket> plus_eigenbasis(const TwoTimeFrame& frame);

/// Maps each +1 eigenstate |+,v> of Q(t1) to D|+,v> / <D^2>^{1/2}. Inputs
/// must be unit-norm eigenstates of both Q(t1) and D^2 (e.g. from
/// plus_eigenbasis, or any subset of it: with unequal degeneracies the
/// caller decides which states to keep). Throws UndefinedResult when
/// <D^2> vanishes.
std::vector<Ket> pm_basis(const TwoTimeFrame& frame, std::span<const Ket> plus_states);

/// <psi|C|psi> for psi = a1|+,v> + a2|-,v>; requires |a1|^2 + |a2|^2 = 1.
double superposition_correlator(const TwoTimeFrame& frame, const Ket& plus_ket,
                                const Ket& minus_ket, Complex a1, Complex a2);

}  // namespace lgsim
