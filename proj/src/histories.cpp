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

#include "lgsim/histories.hpp"

#include <algorithm>
#include <string>

namespace lgsim {

namespace {

constexpr double kVanishingProbability = 1e-14;

void fill_dfunc(HistorySet& hs) {
  hs.dfunc = decoherence_functional(hs);
  hs.probs.resize(hs.size());
  for (std::size_t a = 0; a < hs.size(); ++a) {
    hs.probs[a] = hs.dfunc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real();
  }
}

}  // namespace

ProjectiveGrid::ProjectiveGrid(std::vector<double> times,
                               std::vector<std::vector<Operator>> alternatives)
    : times_(std::move(times)), alternatives_(std::move(alternatives)) {
  if (times_.empty()) throw InvalidInput("projective grid: at least one time is required");
  if (times_.size() != alternatives_.size()) {
    throw InvalidInput("projective grid: one alternative set per time is required");
  }
  if (!std::is_sorted(times_.begin(), times_.end())) {
    throw InvalidInput("projective grid: times must be nondecreasing");
  }
  const std::size_t d = alternatives_.front().empty() ? 0 : alternatives_.front().front().dim();
  for (std::size_t k = 0; k < alternatives_.size(); ++k) {
    const auto& alts = alternatives_[k];
    const std::string where = "projective grid: time index " + std::to_string(k);
    if (alts.empty()) throw InvalidInput(where + " has no alternatives");
    const auto n = static_cast<Eigen::Index>(d);
    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < alts.size(); ++a) {
      if (alts[a].dim() != d) throw InvalidInput(where + ": dimension mismatch");
      if (!alts[a].is_projector()) throw InvalidInput(where + ": alternative is not a projector");
      for (std::size_t b = a + 1; b < alts.size(); ++b) {
        if (max_abs(alts[a].matrix() * alts[b].matrix()) > kStructureTol) {
          throw InvalidInput(where + ": alternatives are not mutually orthogonal");
        }
      }
      sum += alts[a].matrix();
    }
    if (max_abs(sum - Matrix::Identity(n, n)) > kStructureTol) {
      throw InvalidInput(where + ": alternatives do not sum to the identity");
    }
  }
}

ProjectiveGrid ProjectiveGrid::dichotomic(const Operator& q, std::vector<double> times) {
  std::vector<std::vector<Operator>> alts(times.size(),
                                          {projector(q, Sign::Plus), projector(q, Sign::Minus)});
  return ProjectiveGrid(std::move(times), std::move(alts));
}

std::size_t ProjectiveGrid::dim() const { return alternatives_.front().front().dim(); }

std::size_t HistorySet::index_of(const HistoryLabel& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidInput("history label not present in set");
  return static_cast<std::size_t>(it - labels.begin());
}

HistorySet build_histories(const ProjectiveGrid& grid, const Operator& h,
                           const QuantumState& psi) {
  require_hermitian(h);
  if (h.dim() != grid.dim() || psi.dim() != grid.dim()) {
    throw InvalidInput("build_histories: dimension mismatch between grid, H and state");
  }
  const Ket& ket = psi.ket();

  // Heisenberg-picture projectors for every (time, alternative).
  const auto& times = grid.times();
  std::vector<std::vector<Matrix>> evolved(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (const Operator& p : grid.alternatives()[k]) {
      evolved[k].push_back(heisenberg(p, h, times[k]).matrix());
    }
  }

  HistorySet hs;
  hs.psi = ket;
  const auto n = static_cast<Eigen::Index>(grid.dim());
  HistoryLabel label(times.size(), 0);
  while (true) {
    Matrix c = Matrix::Identity(n, n);
    for (std::size_t k = 0; k < times.size(); ++k) c = evolved[k][label[k]] * c;
    hs.labels.push_back(label);
    hs.history_states.emplace_back(c * ket);
    hs.class_ops.push_back(std::move(c));

    // Odometer increment, last time fastest.
    std::size_t k = times.size();
    while (k > 0) {
      --k;
      if (++label[k] < evolved[k].size()) break;
      label[k] = 0;
      if (k == 0) {
        fill_dfunc(hs);
        return hs;
      }
    }
  }
}

HistorySet coarse_grain(const HistorySet& hs,
                        const std::vector<std::vector<HistoryLabel>>& groups) {
  std::vector<int> seen(hs.size(), 0);
  HistorySet out;
  out.psi = hs.psi;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw InvalidInput("coarse_grain: empty group");
    Matrix c = Matrix::Zero(hs.class_ops.front().rows(), hs.class_ops.front().cols());
    Ket state = Ket::Zero(hs.psi.size());
    for (const HistoryLabel& l : groups[g]) {
      const std::size_t i = hs.index_of(l);
      if (seen[i]++) throw InvalidInput("coarse_grain: label appears in more than one group");
      c += hs.class_ops[i];
      state += hs.history_states[i];
    }
    out.labels.push_back({g});
    out.class_ops.push_back(std::move(c));
    out.history_states.push_back(std::move(state));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidInput("coarse_grain: groups do not cover every history");
  }
  fill_dfunc(out);
  return out;
}

HistorySet same_diff_histories(const Operator& q, const Operator& h, double t1, double t2,
                               const QuantumState& psi) {
  const HistorySet fine = build_histories(ProjectiveGrid::dichotomic(q, {t1, t2}), h, psi);
  return coarse_grain(fine, {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}});
}

Matrix decoherence_functional(const HistorySet& hs) {
  const auto n = static_cast<Eigen::Index>(hs.size());
  Matrix d(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      d(a, b) = hs.history_states[static_cast<std::size_t>(a)].dot(
          hs.history_states[static_cast<std::size_t>(b)]);
    }
  }
  return d;
}

double max_off_diagonal_real(const HistorySet& hs) {
  double m = 0.0;
  for (Eigen::Index a = 0; a < hs.dfunc.rows(); ++a) {
    for (Eigen::Index b = 0; b < hs.dfunc.cols(); ++b) {
      if (a != b) m = std::max(m, std::abs(hs.dfunc(a, b).real()));
    }
  }
  return m;
}

double max_off_diagonal_abs(const HistorySet& hs) {
  double m = 0.0;
  for (Eigen::Index a = 0; a < hs.dfunc.rows(); ++a) {
    for (Eigen::Index b = 0; b < hs.dfunc.cols(); ++b) {
      if (a != b) m = std::max(m, std::abs(hs.dfunc(a, b)));
    }
  }
  return m;
}

bool is_consistent(const HistorySet& hs, double tol) { return max_off_diagonal_real(hs) <= tol; }

bool is_decoherent(const HistorySet& hs, double tol) { return max_off_diagonal_abs(hs) <= tol; }

Operator record_projector(const HistorySet& hs, std::size_t index, double tol) {
  if (index >= hs.size()) throw InvalidInput("record_projector: history index out of range");
  if (!is_decoherent(hs, tol)) {
    throw UndefinedResult("record_projector: history set is not decoherent");
  }
  const double p = hs.probs[index];
  if (p <= kVanishingProbability) {
    throw UndefinedResult("record_projector: history has zero probability");
  }
  const Ket& state = hs.history_states[index];
  Matrix r = state * state.adjoint() / p;
  r = 0.5 * (r + r.adjoint()).eval();
  return Operator(std::move(r), OperatorRole::Projector);
}

}  // namespace lgsim
