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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgsim/protocols.hpp"

namespace lgsim {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Slack on each side of the three-time inequality
///   -1 <= C12 + C23 + C13 <= 1 + 2 min{C12, C23, C13}.
/// A negative margin is a violation of that side.
struct LgMargins {
  double lower = 0.0;
  double upper = 0.0;

  double worst() const { return lower < upper ? lower : upper; }
  bool violated() const { return worst() < 0.0; }
};

double correlator(const JointDistribution& jd);

LgMargins lg_check(double c12, double c23, double c13);

/// Means of Q at the later time of each pair, in each measurement context:
/// q2_12 is Q(t2) when t1 was measured, q2_23 is Q(t2) as the first time of
/// the (t2,t3) pair, and so on.
struct ContextualMeans {
  double q2_12 = 0.0;
  double q2_23 = 0.0;
  double q3_13 = 0.0;
  double q3_23 = 0.0;
};

/// (|<Q2^12> - <Q2^23>| + |<Q3^13> - <Q3^23>|) / 2
double delta0(const ContextualMeans& means);

/// Both bounds of lg_check widened by 2*delta0.
LgMargins modified_lg_check(double c12, double c23, double c13, double delta0);

/// Classical tags pair results produced by the hidden-variable sampler;
/// measure_pair rejects it.
enum class ProtocolKind { Sequential, Quasi, AncillaSimple, AncillaGeneral, Record, Classical };

std::string to_string(ProtocolKind kind);
/// Throws InvalidInput for unknown names.
ProtocolKind protocol_from_string(const std::string& name);

struct ProtocolChoice {
  ProtocolKind kind = ProtocolKind::Sequential;
  Complex alpha{1.0, 0.0};  // ancilla_general only
  Complex beta{0.0, 0.0};
};

using NamedValues = std::vector<std::pair<std::string, double>>;

/// Result of one pair experiment under one protocol.
struct PairMeasurement {
  ProtocolChoice protocol;
  double t_first = 0.0;
  double t_second = 0.0;
  NamedValues p_table;
  double c = kNaN;
  NamedValues diagnostics;
  std::string flag;  // nonempty when the protocol was inapplicable

  bool ok() const { return flag.empty(); }
};

PairMeasurement measure_pair(const Operator& q, const Operator& h, const QuantumState& state,
                             double t_first, double t_second, const ProtocolChoice& protocol);

/// Contextual means from the two-ancilla circuit, run once per pair on an
/// identically prepared state.
ContextualMeans quantum_contextual_means(const Operator& q, const Operator& h,
                                         const QuantumState& state, double t1, double t2,
                                         double t3);

struct LgScenario {
  Operator q;
  Operator h;
  QuantumState state;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  std::array<ProtocolChoice, 3> protocols{};  // pairs (1,2), (2,3), (1,3)
};

struct LgReport {
  double tau = kNaN;
  double c12 = kNaN;
  double c23 = kNaN;
  double c13 = kNaN;
  ContextualMeans means;
  double delta0 = 0.0;
  LgMargins standard{kNaN, kNaN};
  LgMargins modified{kNaN, kNaN};
  std::array<PairMeasurement, 3> pairs{};
  std::string flag;

  bool flagged() const { return !flag.empty(); }
  /// Largest negative margin as a positive number; zero when satisfied.
  double standard_violation() const;
  double modified_violation() const;
};

/// Assembles one report from the three correlators and the contextual means.
LgReport assemble_report(double c12, double c23, double c13, const ContextualMeans& means);

/// Requires t1 <= t2 <= t3 and matching dimensions.
LgReport evaluate_lg(const LgScenario& scenario);

enum class Bound { Lower, Upper, Either };

struct ScanOptions {
  double t1 = 0.0;
  unsigned threads = 1;
};

struct ScanExtremum {
  double violation = 0.0;  // largest negative-margin magnitude; 0 when never violated
  double tau = kNaN;
};

struct ScanResult {
  std::vector<LgReport> reports;  // ordered as the tau grid
  ScanExtremum lower;
  ScanExtremum upper;
  ScanExtremum overall;  // earliest tau on ties; tau is NaN when nothing is violated
};

/// Equal spacing t2 - t1 = t3 - t2 = tau for each tau in the grid, the same
/// protocol for all three pairs.
ScanResult violation_scan(const Operator& q, const Operator& h, const QuantumState& state,
                          const ProtocolChoice& protocol, std::span<const double> taus,
                          const ScanOptions& options = {});

/// Summarises a list of reports already ordered by tau.
ScanResult summarize_scan(std::vector<LgReport> reports);

/// Successive grid refinement of the violation of `bound` on [tau_lo, tau_hi].
ScanExtremum refine_violation(const Operator& q, const Operator& h, const QuantumState& state,
                              const ProtocolChoice& protocol, double tau_lo, double tau_hi,
                              Bound bound, const ScanOptions& options = {}, int levels = 8,
                              int points = 41);

}  // namespace lgsim
