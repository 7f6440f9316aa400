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
#include <optional>
#include <string>

#include "lgsim/histories.hpp"
#include "lgsim/qcore.hpp"
#include "lgsim/twotime.hpp"

namespace lgsim {

enum class DistributionKind { Probability, QuasiProbability };

/// p(s1, s2) over {+1,-1}^2. Quasi-probabilities may be negative.
class JointDistribution {
 public:
  JointDistribution() = default;
  JointDistribution(std::array<double, 4> p, DistributionKind kind);

  static std::size_t index(Sign s1, Sign s2);

  double operator()(Sign s1, Sign s2) const { return p_[index(s1, s2)]; }
  const std::array<double, 4>& table() const { return p_; }  // ++, +-, -+, --
  DistributionKind kind() const { return kind_; }

  double total() const;
  double correlator() const;  // sum s1 s2 p(s1, s2)
  double marginal_first(Sign s1) const;
  double marginal_second(Sign s2) const;
  double mean_first() const;
  double mean_second() const;

 private:
  std::array<double, 4> p_{};
  DistributionKind kind_ = DistributionKind::Probability;
};

/// p(s1,s2) = Tr(P_{s2}(t2) P_{s1}(t1) rho P_{s1}(t1)).
JointDistribution sequential_two_time(const QuantumState& state, const Operator& q,
                                      const Operator& h, double t1, double t2);

/// q(s1,s2) = Re Tr(P_{s2}(t2) P_{s1}(t1) rho).
JointDistribution quasi_probability(const QuantumState& state, const Operator& q,
                                    const Operator& h, double t1, double t2);

/// Ancilla coupling order. Standard: flip at t1 iff Q = +1, at t2 iff Q = -1.
/// Opposite: flip at t1 iff Q = -1, at t2 iff Q = +1. Both leave the ancilla
/// in |1> exactly for "same" histories.
enum class Coupling { Standard, Opposite };

struct SingleTimeMeans {
  double first = 0.0;   // <Q(t1)> read from the reconstructed joint outcomes
  double second = 0.0;  // <Q(t2)> read from the second ancilla
  JointDistribution joint;
};

struct AncillaOutcome {
  double p0 = 0.0;
  double p1 = 0.0;
  /// System (x) ancilla after the second gate; pure inputs only.
  std::optional<Ket> joint_state;
  /// Purity of the reduced system state after the second gate.
  double reduced_system_purity = 1.0;
  /// Purity of the reduced system state between the gates.
  double intermediate_purity = 1.0;
  /// <psi_t2| rho_sys |psi_t2> against the freely evolved input; pure inputs only.
  std::optional<double> fidelity_with_free_evolution;
  /// || |Psi_1> - |psi_t1> (x) |ancilla_0> || right after the first gate.
  double disturbance = 0.0;
  /// Absent at the zero-information point |alpha|^2 = |beta|^2.
  std::optional<double> inferred_c12;
  /// Present when the second (t2, Q = +1) ancilla was requested.
  std::optional<SingleTimeMeans> means;
};

struct AncillaOptions {
  Coupling coupling = Coupling::Standard;
  bool second_ancilla = false;
};

/// Two CNOT gates with the ancilla prepared in |0>.
AncillaOutcome ancilla_simple(const QuantumState& state, const Operator& q, const Operator& h,
                              double t1, double t2, const AncillaOptions& options = {});

/// Throws InvalidInput unless |alpha|^2 + |beta|^2 = 1 and alpha, beta share
/// a phase (either may be zero).
void validate_ancilla_amplitudes(Complex alpha, Complex beta);

/// Ancilla prepared in alpha|0> + beta|1>; alpha and beta must be normalized
/// and share a phase.
AncillaOutcome ancilla_general(const QuantumState& state, const Operator& q, const Operator& h,
                               double t1, double t2, Complex alpha, Complex beta);

/// Equal-weight average of the standard and opposite couplings. The two
/// halves measure different things, so this is not a non-invasive estimate.
AncillaOutcome ancilla_averaged(const QuantumState& state, const Operator& q, const Operator& h,
                                double t1, double t2);

struct RecordOutcome {
  bool decoherent = false;
  double d_expectation = 0.0;
  /// <psi|R_same|psi>; absent unless decoherent.
  std::optional<double> p_same;
  /// |<psi_t2|psi_t1>|^2, reported when H^2 is proportional to I.
  std::optional<double> decay_overlap;

  std::optional<double> c12() const;
};

/// Single-measurement protocol through the record projector of the "same"
/// history. Inapplicable (decoherent = false) when <D> != 0 at `tol`.
RecordOutcome record_protocol(const QuantumState& psi, const Operator& q, const Operator& h,
                              double t1, double t2, double tol = kDecoherenceTol);

/// p_2(s2) = Tr(P_{s2}(t2) rho), with no earlier measurement.
std::array<double, 2> unmeasured_marginal(const QuantumState& state, const Operator& q,
                                          const Operator& h, double t);

/// max over s2 of |sum_{s1} p12(s1,s2) - p2(s2)| for the sequential protocol.
double nsit_deviation(const QuantumState& state, const Operator& q, const Operator& h, double t1,
                      double t2);

/// Same diagnostic for an arbitrary two-time table (e.g. quasi-probabilities).
double nsit_deviation(const JointDistribution& jd, const QuantumState& state, const Operator& q,
                      const Operator& h, double t2);

}  // namespace lgsim
