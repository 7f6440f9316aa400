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

#include <cstddef>
#include <vector>

#include "lgsim/qcore.hpp"

namespace lgsim {

/// Default absolute tolerance on off-diagonal decoherence functional entries.
inline constexpr double kDecoherenceTol = 1e-8;

/// One index per time into that time's list of alternatives.
using HistoryLabel = std::vector<std::size_t>;

/// Exclusive, exhaustive alternatives at each of an ordered list of times.
class ProjectiveGrid {
 public:
  /// Throws InvalidInput unless times are nondecreasing and every time's
  /// projectors are mutually orthogonal and sum to the identity.
  ProjectiveGrid(std::vector<double> times, std::vector<std::vector<Operator>> alternatives);

  /// {P+, P-} of a dichotomic Q at each time (index 0 is +, 1 is -).
  static ProjectiveGrid dichotomic(const Operator& q, std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  const std::vector<std::vector<Operator>>& alternatives() const { return alternatives_; }
  std::size_t dim() const;

 private:
  std::vector<double> times_;
  std::vector<std::vector<Operator>> alternatives_;
};

/// Class operators, history states C_a|psi> and the decoherence functional
/// for one set of (possibly coarse-grained) histories.
struct HistorySet {
  std::vector<HistoryLabel> labels;
  std::vector<Matrix> class_ops;
  std::vector<Ket> history_states;
  Matrix dfunc;               // D(a, a') = <a|a'>
  std::vector<double> probs;  // D(a, a)
  Ket psi;

  std::size_t size() const { return labels.size(); }
  /// Throws InvalidInput when the label is absent.
  std::size_t index_of(const HistoryLabel& label) const;
};

/// Heisenberg-picture class operators C_a = P_{a_n}(t_n) ... P_{a_1}(t_1)
/// over the full Cartesian product of alternatives, with the last time's
/// index varying fastest. Requires a pure state.
HistorySet build_histories(const ProjectiveGrid& grid, const Operator& h, const QuantumState& psi);

/// Merges histories by summing class operators. `groups` lists the member
/// labels of each coarse history; together they must partition the set.
/// The result's labels are {0}, {1}, ... in group order.
HistorySet coarse_grain(const HistorySet& hs, const std::vector<std::vector<HistoryLabel>>& groups);

/// The two-time dichotomic set coarse-grained into "same" (index 0: ++, --)
/// and "diff" (index 1: +-, -+).
HistorySet same_diff_histories(const Operator& q, const Operator& h, double t1, double t2,
                               const QuantumState& psi);

/// Recomputes <a|a'> from the history states.
Matrix decoherence_functional(const HistorySet& hs);

/// Largest |Re D(a,a')| and |D(a,a')| over a != a'.
double max_off_diagonal_real(const HistorySet& hs);
double max_off_diagonal_abs(const HistorySet& hs);

bool is_consistent(const HistorySet& hs, double tol = kDecoherenceTol);
bool is_decoherent(const HistorySet& hs, double tol = kDecoherenceTol);

/// R_a = C_a|psi><psi|C_a^dagger / p(a). This is one record projector among
/// many in general. Throws UndefinedResult when the set is not decoherent at
/// `tol` or when p(a) vanishes.
Operator record_projector(const HistorySet& hs, std::size_t index, double tol = kDecoherenceTol);

}  // namespace lgsim
